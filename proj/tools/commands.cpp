// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fdecanc/error.hpp"
#include "fdecanc/io.hpp"
#include "fdecanc/metrics.hpp"
#include "fdecanc/models.hpp"
#include "fdecanc/network.hpp"

namespace fdecanc::cli {

namespace {

// Bad flag values detected after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  } catch (const InsufficientGrid& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomically(path, content);
  }
}

FrequencyGrid grid_flag(const std::string& text) {
  return as_usage([&] { return FrequencyGrid::parse(text); });
}

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// ---------------------------------------------------------------- model

struct ModelArgs {
  std::string kind;
  double amp_db = 0.0;
  double phase = 0.0;
  double fc = 0.0;
  double q = 10.0;
  double cf_pf = 1.5;
  double cq_pf = 8.0;
  bool bpf_only = false;
  bool companion = false;
  std::string band = "850e6:950e6:101";
  std::string out;
  CLI::Option* fc_opt = nullptr;
};

void add_model(CLI::App& app, ModelArgs& a) {
  auto* cmd = app.add_subcommand("model", "Frequency response of one canceller tap");
  cmd->add_option("--kind", a.kind, "Tap model")->required()->check(CLI::IsMember({"ideal", "pcb"}));
  cmd->add_option("--amp-db", a.amp_db, "Tap amplitude in dB");
  cmd->add_option("--phase", a.phase, "Tap phase in rad");
  a.fc_opt = cmd->add_option("--fc", a.fc, "Center frequency in Hz (ideal)");
  cmd->add_option("--q", a.q, "Quality factor (ideal)");
  cmd->add_option("--cf-pf", a.cf_pf, "C_F in pF (pcb)");
  cmd->add_option("--cq-pf", a.cq_pf, "C_Q in pF (pcb)");
  cmd->add_flag("--bpf-only", a.bpf_only, "PCB: bandpass filter alone, without tap gain and path delay");
  cmd->add_flag("--companion", a.companion, "PCB: inductances from the BPF test-structure fit");
  cmd->add_option("--band", a.band, "Grid start:stop:count")->capture_default_str();
  cmd->add_option("--out", a.out, "Output CSV (default stdout)");
}

int run_model(const ModelArgs& a, std::ostream& out) {
  const FrequencyGrid grid = grid_flag(a.band);
  ComplexResponse h(grid);
  if (a.kind == "ideal") {
    if (a.fc_opt->count() == 0) throw UsageError("--fc is required for --kind ideal");
    const IdealTapConfig cfg{a.amp_db, a.phase, a.fc, a.q};
    as_usage([&] { cfg.validate(); });
    h = ideal_tap_response(cfg, grid);
  } else {
    const PcbTapConfig cfg{a.amp_db, a.phase, a.cf_pf, a.cq_pf};
    const PcbBoardParams board = a.companion ? PcbBoardParams::companion_fit() : PcbBoardParams{};
    as_usage([&] { cfg.validate(); });
    if (a.bpf_only) {
      h = pcb_bpf_response_closed_form(cfg, board, grid);
    } else {
      const std::array<PcbTapConfig, 1> one{cfg};
      h = pcb_canceller_response(one, board, grid);
    }
  }
  const auto amp = amplitude_db(h);
  const auto phase = unwrapped_phase(h);
  const auto gd = group_delay(h);
  std::string csv = "freq_hz,amp_db,phase_rad,gd_s\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    csv += format_double(grid[k]) + ',' + format_double(amp[k]) + ',' + format_double(phase[k]) + ',' +
           format_double(gd[k]) + '\n';
  }
  emit(a.out, csv, out);
  return kExitOk;
}

// ---------------------------------------------------------------- fit

struct SolveArgs {
  std::uint64_t seed = 0;
  int restarts = SolveOptions{}.restarts;
  int max_iters = SolveOptions{}.max_iters;

  SolveOptions options() const {
    SolveOptions o;
    o.seed = seed;
    o.restarts = restarts;
    o.max_iters = max_iters;
    as_usage([&] { o.validate(); });
    return o;
  }
};

void add_solve_flags(CLI::App* cmd, SolveArgs& s) {
  cmd->add_option("--seed", s.seed, "Solver seed");
  cmd->add_option("--restarts", s.restarts, "Random starts")->capture_default_str();
  cmd->add_option("--max-iters", s.max_iters, "Iterations per start")->capture_default_str();
}

struct FitArgs {
  bool synth = false;
  std::string channel;
  std::string model = "ideal";
  std::size_t taps = 2;
  std::string band;
  SolveArgs solve;
  std::string quantize;
  int local_rounds = 10;
  double min_sic_db = 0.0;
  std::string report;
  std::string residual;
};

void add_fit(CLI::App& app, FitArgs& a) {
  auto* cmd = app.add_subcommand("fit", "Configure a canceller against an SI channel");
  auto* synth = cmd->add_flag("--synth", a.synth, "Use the default synthetic SI channel");
  auto* channel = cmd->add_option("--channel", a.channel, "SI channel CSV (freq_hz,re,im)");
  synth->excludes(channel);
  cmd->add_option("--model", a.model, "Canceller model")->check(CLI::IsMember({"ideal", "pcb"}))->capture_default_str();
  cmd->add_option("--taps", a.taps, "Number of taps")->capture_default_str();
  cmd->add_option("--band", a.band, "Grid start:stop:count (synthetic grid, or resampling grid for --channel)");
  add_solve_flags(cmd, a.solve);
  cmd->add_option("--quantize", a.quantize, "Quantization preset")->check(CLI::IsMember({"rfic", "pcb"}));
  cmd->add_option("--local-rounds", a.local_rounds, "Local search rounds")->capture_default_str();
  cmd->add_option("--min-sic-db", a.min_sic_db, "Fail (exit 2) below this average SIC")->capture_default_str();
  cmd->add_option("--report", a.report, "Report JSON (default stdout)");
  cmd->add_option("--residual", a.residual, "Residual CSV freq_hz,sic_db");
}

int run_fit_command(const FitArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.synth && a.channel.empty()) throw UsageError("one of --synth or --channel is required");
  FitRequest req;
  req.model = parse_model_kind(a.model);
  req.taps = a.taps;
  req.solve = a.solve.options();
  req.local_rounds = a.local_rounds;
  if (a.taps < 1) throw UsageError("--taps must be >= 1");
  if (a.local_rounds < 1) throw UsageError("--local-rounds must be >= 1");
  if (!a.quantize.empty()) {
    req.quantize = preset_by_name(a.quantize);
    if (req.quantize->kind != req.model) {
      throw UsageError("preset '" + a.quantize + "' does not apply to model '" + a.model + "'");
    }
  }

  std::optional<ComplexResponse> h;
  if (a.synth) {
    const FrequencyGrid grid = grid_flag(a.band.empty() ? "890e6:910e6:101" : a.band);
    h = synth_si_channel(SynthChannelSpec{}, grid);
  } else {
    GridPolicy policy;
    if (!a.band.empty()) policy.resample_to = grid_flag(a.band);
    h = load_si_channel(a.channel, policy);
  }

  const FitResult res = run_fit(req, *h);
  emit(a.report, report_to_json(res.final), out);
  if (!a.residual.empty()) {
    const SicSummary sic = rf_sic_db(res.residual);
    std::string csv = "freq_hz,sic_db\n";
    for (std::size_t k = 0; k < res.residual.size(); ++k) {
      csv += format_double(res.residual.grid()[k]) + ',' + format_double(sic.per_point_db[k]) + '\n';
    }
    write_file_atomically(a.residual, csv);
  }
  if (!(res.final.avg_sic_db >= a.min_sic_db)) {
    err << "error: average SIC " << res.final.avg_sic_db << " dB is below --min-sic-db " << a.min_sic_db << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::vector<std::size_t> taps{1, 2, 3, 4};
  std::vector<double> bands{20e6, 40e6, 80e6};
  double center = 900e6;
  std::size_t points = 101;
  std::string model = "ideal";
  SolveArgs solve;
  std::string out;
};

void add_sweep(CLI::App& app, SweepArgs& a) {
  auto* cmd = app.add_subcommand("sweep", "Average SIC over tap counts and bandwidths");
  cmd->add_option("--taps", a.taps, "Tap counts, comma separated")->delimiter(',');
  cmd->add_option("--bands", a.bands, "Bandwidths in Hz, comma separated")->delimiter(',');
  cmd->add_option("--center", a.center, "Band center in Hz")->capture_default_str();
  cmd->add_option("--points", a.points, "Grid points per band")->capture_default_str();
  cmd->add_option("--model", a.model, "Canceller model")->check(CLI::IsMember({"ideal", "pcb"}))->capture_default_str();
  add_solve_flags(cmd, a.solve);
  cmd->add_option("--out", a.out, "Output CSV (default stdout)");
}

int run_sweep_command(const SweepArgs& a, std::ostream& out) {
  SweepRequest req;
  req.model = parse_model_kind(a.model);
  req.taps = a.taps;
  req.bandwidths_hz = a.bands;
  req.center_hz = a.center;
  req.points = a.points;
  req.solve = a.solve.options();
  for (auto m : req.taps) {
    if (m < 1) throw UsageError("--taps entries must be >= 1");
  }
  for (double b : req.bandwidths_hz) {
    as_usage([&] { FrequencyGrid::centered(req.center_hz, b, req.points); });
  }
  const auto cells = run_sweep(req);
  emit(a.out, format_sweep_csv(cells), out);
  return kExitOk;
}

// ---------------------------------------------------------------- network

struct NetworkArgs {
  std::string scenario;
  std::string out;
  double gamma_self = 1.0;
  double bandwidth = 20e6;
  // uldl
  std::string ul_db = "10";
  std::string dl_db = "10";
  std::string iui_db = "0";
  // threenode
  std::string g1_db = "10";
  std::string g2_db = "10";
  // tdma
  std::size_t users = 2;
  std::string schedule = "both";
  std::vector<double> gamma_db;
  std::vector<int> fd;
  double tdma_iui_db = 10.0;
  std::size_t slots = 12;
  CLI::Option* gamma_db_opt = nullptr;
  CLI::Option* fd_opt = nullptr;
  CLI::Option* tdma_iui_opt = nullptr;
  CLI::Option* gamma_self_opt = nullptr;
  CLI::App* uldl = nullptr;
  CLI::App* threenode = nullptr;
  CLI::App* tdma = nullptr;
};

void add_common_network_flags(CLI::App* cmd, NetworkArgs& a) {
  a.gamma_self_opt = cmd->add_option("--gamma-self", a.gamma_self, "Residual self-interference ratio (linear)");
  cmd->add_option("--bandwidth", a.bandwidth, "Channel bandwidth in Hz");
  cmd->add_option("--out", a.out, "Output CSV (default stdout)");
}

void add_network(CLI::App& app, NetworkArgs& a) {
  auto* cmd = app.add_subcommand("network", "Full-duplex throughput and fairness analysis");
  cmd->add_option("--scenario", a.scenario, "JSON scenario file");
  cmd->add_option("--out", a.out, "Output CSV (default stdout)");
  cmd->require_subcommand(0, 1);

  a.uldl = cmd->add_subcommand("uldl", "UL-DL network with an FD base station");
  a.uldl->add_option("--gamma-ul-db", a.ul_db, "UL SNR in dB (value or start:stop:count)");
  a.uldl->add_option("--gamma-dl-db", a.dl_db, "DL SNR in dB (value or start:stop:count)");
  a.uldl->add_option("--gamma-iui-db", a.iui_db, "IUI in dB (value or start:stop:count)");
  add_common_network_flags(a.uldl, a);

  a.threenode = cmd->add_subcommand("threenode", "Two users of an FD base station");
  a.threenode->add_option("--gamma1-db", a.g1_db, "User 1 SNR in dB (value or start:stop:count)");
  a.threenode->add_option("--gamma2-db", a.g2_db, "User 2 SNR in dB (value or start:stop:count)");
  add_common_network_flags(a.threenode, a);

  a.tdma = cmd->add_subcommand("tdma", "Slot-level TDMA schedule evaluation");
  a.tdma->add_option("--users", a.users, "2 or 3 users (default instance)")->check(CLI::IsMember({2, 3}));
  a.tdma->add_option("--schedule", a.schedule, "rro, iuif or both")->check(CLI::IsMember({"rro", "iuif", "both"}));
  a.gamma_db_opt = a.tdma->add_option("--gamma-db", a.gamma_db, "Per-user SNR in dB, comma separated")->delimiter(',');
  a.fd_opt = a.tdma->add_option("--fd", a.fd, "Per-user FD capability 0/1, comma separated")->delimiter(',');
  a.tdma_iui_opt = a.tdma->add_option("--iui-db", a.tdma_iui_db, "IUI between users in dB");
  a.tdma->add_option("--slots", a.slots, "TDMA slots")->capture_default_str();
  add_common_network_flags(a.tdma, a);
}

std::vector<NetworkRow> network_uldl(const NetworkArgs& a) {
  const auto ul = parse_range(a.ul_db);
  const auto dl = parse_range(a.dl_db);
  const auto iui = parse_range(a.iui_db);
  std::vector<NetworkRow> rows;
  for (double u : ul) {
    for (double d : dl) {
      for (double i : iui) {
        UlDlScenario s;
        as_usage([&] {
          s.gamma_ul = snr_from_db(u);
          s.gamma_dl = snr_from_db(d);
          s.gamma_iui = snr_from_db(i);
          s.gamma_self = a.gamma_self;
          s.bandwidth_hz = a.bandwidth;
          s.validate();
        });
        const std::string id = "ul" + compact(u) + "_dl" + compact(d) + "_iui" + compact(i);
        auto r = uldl_rows(id, s);
        rows.insert(rows.end(), r.begin(), r.end());
      }
    }
  }
  return rows;
}

std::vector<NetworkRow> network_threenode(const NetworkArgs& a) {
  std::vector<NetworkRow> rows;
  for (double g1 : parse_range(a.g1_db)) {
    for (double g2 : parse_range(a.g2_db)) {
      MultiUserScenario s;
      as_usage([&] {
        s.gamma = {snr_from_db(g1), snr_from_db(g2)};
        s.fd_capable = {false, false};
        s.gamma_self = a.gamma_self;
        s.bandwidth_hz = a.bandwidth;
        s.validate();
      });
      auto r = three_node_rows("g1_" + compact(g1) + "_g2_" + compact(g2), s);
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  return rows;
}

std::vector<NetworkRow> network_tdma(const NetworkArgs& a) {
  NetworkInstance inst = a.users == 3 ? default_four_node_instance() : default_three_node_instance();
  const std::size_t n = inst.scenario.users();
  if (a.gamma_db_opt->count() > 0) {
    if (a.gamma_db.size() != n) throw UsageError("--gamma-db needs one value per user");
    inst.scenario.gamma.clear();
    for (double g : a.gamma_db) inst.scenario.gamma.push_back(as_usage([&] { return snr_from_db(g); }));
  }
  if (a.fd_opt->count() > 0) {
    if (a.fd.size() != n) throw UsageError("--fd needs one flag per user");
    for (std::size_t i = 0; i < n; ++i) inst.scenario.fd_capable[i] = a.fd[i] != 0;
  }
  if (a.tdma_iui_opt->count() > 0) inst.schedule.iui = uniform_iui(n, as_usage([&] { return snr_from_db(a.tdma_iui_db); }));
  if (a.gamma_self_opt->count() > 0) inst.scenario.gamma_self = a.gamma_self;
  inst.scenario.bandwidth_hz = a.bandwidth;
  inst.schedule.slots = a.slots;
  as_usage([&] {
    inst.scenario.validate();
    inst.schedule.validate(n);
  });

  std::vector<NetworkRow> rows;
  const std::string id = "tdma" + std::to_string(n) + "u";
  for (auto kind : {ScheduleKind::kRoundRobinOpportunistic, ScheduleKind::kIuiFree}) {
    if (a.schedule != "both" && a.schedule != schedule_name(kind)) continue;
    ScheduleSpec spec = inst.schedule;
    spec.kind = kind;
    auto r = tdma_rows(id, inst.scenario, spec);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return rows;
}

int run_network(const NetworkArgs& a, std::ostream& out) {
  std::vector<NetworkRow> rows;
  const bool sub = a.uldl->parsed() || a.threenode->parsed() || a.tdma->parsed();
  if (!a.scenario.empty()) {
    if (sub) throw UsageError("--scenario cannot be combined with a network subcommand");
    rows = evaluate_scenario_json(read_file(a.scenario));
  } else if (a.uldl->parsed()) {
    rows = network_uldl(a);
  } else if (a.threenode->parsed()) {
    rows = network_threenode(a);
  } else if (a.tdma->parsed()) {
    rows = network_tdma(a);
  } else {
    throw UsageError("network needs --scenario or one of uldl, threenode, tdma");
  }
  emit(a.out, format_network_csv(rows), out);
  return kExitOk;
}

// ---------------------------------------------------------------- genchannel

struct GenArgs {
  double isolation_db = SynthChannelSpec{}.isolation_db;
  double base_delay_ns = SynthChannelSpec{}.base_delay_s * 1e9;
  std::vector<std::string> reflections;
  bool no_reflections = false;
  std::uint64_t seed = 0;
  bool random_phase = false;
  std::string band = "850e6:950e6:101";
  std::string out;
};

void add_genchannel(CLI::App& app, GenArgs& a) {
  auto* cmd = app.add_subcommand("genchannel", "Write a synthetic SI channel CSV");
  cmd->add_option("--isolation-db", a.isolation_db, "Mean TX/RX isolation in dB")->capture_default_str();
  cmd->add_option("--base-delay-ns", a.base_delay_ns, "Bulk delay in ns")->capture_default_str();
  auto* refl = cmd->add_option("--reflection", a.reflections, "Echo amp_db:delay_ns (repeatable)");
  auto* none = cmd->add_flag("--no-reflections", a.no_reflections, "Direct path only");
  refl->excludes(none);
  cmd->add_option("--seed", a.seed, "Seed for echo phases");
  cmd->add_flag("--random-phase", a.random_phase, "Randomize echo phases");
  cmd->add_option("--band", a.band, "Grid start:stop:count")->capture_default_str();
  cmd->add_option("--out", a.out, "Output CSV (default stdout)");
}

int run_genchannel(const GenArgs& a, std::ostream& out) {
  SynthChannelSpec spec;
  spec.isolation_db = a.isolation_db;
  spec.base_delay_s = a.base_delay_ns * 1e-9;
  spec.seed = a.seed;
  spec.randomize_phase = a.random_phase;
  if (a.no_reflections) spec.reflections.clear();
  if (!a.reflections.empty()) {
    spec.reflections.clear();
    for (const auto& r : a.reflections) {
      const auto colon = r.find(':');
      if (colon == std::string::npos) throw UsageError("--reflection expects amp_db:delay_ns, got '" + r + "'");
      try {
        spec.reflections.push_back({std::stod(r.substr(0, colon)), std::stod(r.substr(colon + 1)) * 1e-9});
      } catch (const std::logic_error&) {
        throw UsageError("--reflection expects amp_db:delay_ns, got '" + r + "'");
      }
    }
  }
  as_usage([&] { spec.validate(); });
  const FrequencyGrid grid = grid_flag(a.band);
  emit(a.out, format_si_channel(synth_si_channel(spec, grid)), out);
  return kExitOk;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto bad = [&] { return UsageError("expected a number or start:stop:count, got '" + text + "'"); };
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      throw bad();
    }
    if (used != s.size() || !std::isfinite(v)) throw bad();
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {number(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw bad();
  const double start = number(text.substr(0, c1));
  const double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
  const double count_d = number(text.substr(c2 + 1));
  if (count_d < 1 || count_d != std::floor(count_d) || count_d > 1e6) throw bad();
  const auto count = static_cast<std::size_t>(count_d);
  if (count == 1) return {start};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = stop;
  return out;
}

FitResult run_fit(const FitRequest& req, const ComplexResponse& h_si) {
  const CancellerModel model = req.model == ModelKind::kIdeal ? CancellerModel::ideal() : CancellerModel::pcb();
  const Preset preset = req.quantize ? *req.quantize : preset_for(req.model);
  SolveReport cont = solve_continuous(model, h_si, preset.quantization.bounds(), req.solve, req.taps);
  SolveReport fin = cont;
  if (req.quantize) {
    const auto q = quantize_config(cont.config, preset.quantization);
    fin = local_search(q, model, h_si, preset.quantization, req.local_rounds);
    fin.restart = cont.restart;
    fin.evaluations += cont.evaluations;
  }
  ComplexResponse residual = h_si - model.evaluate(fin.config, h_si.grid());
  return {std::move(cont), std::move(fin), std::move(residual)};
}

std::vector<SweepCell> run_sweep(const SweepRequest& req) {
  const CancellerModel model = req.model == ModelKind::kIdeal ? CancellerModel::ideal() : CancellerModel::pcb();
  const Preset preset = preset_for(req.model);
  std::vector<SweepCell> cells;
  for (double bw : req.bandwidths_hz) {
    const FrequencyGrid grid = FrequencyGrid::centered(req.center_hz, bw, req.points);
    const ComplexResponse h = synth_si_channel(req.channel, grid);
    for (std::size_t m : req.taps) {
      const SolveReport cont = solve_continuous(model, h, preset.quantization.bounds(), req.solve, m);
      const auto rounded = quantize_config(cont.config, preset.quantization);
      for (bool quantized : {false, true}) {
        const auto& cfg = quantized ? rounded : cont.config;
        const ComplexResponse h_canc = model.evaluate(cfg, grid);
        const SicSummary sic = rf_sic_db(h - h_canc);
        cells.push_back({m, bw, quantized, sic.avg_db, sic.avg_power_db, residual_objective(h, h_canc)});
      }
    }
  }
  return cells;
}

std::string format_sweep_csv(std::span<const SweepCell> cells) {
  std::string out = "taps,bandwidth_hz,mode,avg_sic_db,avg_power_db,objective\n";
  for (const auto& c : cells) {
    out += std::to_string(c.taps) + ',' + format_double(c.bandwidth_hz) + ',' +
           (c.quantized ? "quantized" : "continuous") + ',' + format_double(c.avg_sic_db) + ',' +
           format_double(c.avg_power_db) + ',' + format_double(c.objective) + '\n';
  }
  return out;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-domain-equalization canceller toolkit"};
  app.require_subcommand(1);
  ModelArgs model_args;
  FitArgs fit_args;
  SweepArgs sweep_args;
  NetworkArgs network_args;
  GenArgs gen_args;
  add_model(app, model_args);
  add_fit(app, fit_args);
  add_sweep(app, sweep_args);
  add_network(app, network_args);
  add_genchannel(app, gen_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) {
      err << "run '" << app.get_name() << ' ' << sub->get_name() << " --help' for options\n";
    }
    return kExitUsage;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "model") return run_model(model_args, out);
    if (cmd == "fit") return run_fit_command(fit_args, out, err);
    if (cmd == "sweep") return run_sweep_command(sweep_args, out);
    if (cmd == "network") return run_network(network_args, out);
    return run_genchannel(gen_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace fdecanc::cli
