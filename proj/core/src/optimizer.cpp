// SPDX-License-Identifier: Apache-2.0

#include "fdecanc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fdecanc/error.hpp"
#include "fdecanc/metrics.hpp"
#include "json.hpp"
#include "model_kernels.hpp"

namespace fdecanc {

namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kShrink = 0.5;
constexpr int kMaxBacktracks = 60;
constexpr double kGradFloor = 1e-9;
constexpr double kMaxStep = 1e6;

// Fast residual evaluation on a fixed grid. Uses the same kernels and the same
// summation order as CancellerModel::evaluate + residual_objective, so the
// numbers agree bit for bit.
class ResidualEvaluator {
 public:
  ResidualEvaluator(const CancellerModel& model, const ComplexResponse& h_si)
      : model_(model), h_si_(h_si), freqs_(h_si.grid().points().begin(), h_si.grid().points().end()),
        scratch_(freqs_.size()) {
    if (model_.kind == ModelKind::kPcb) {
      path_.resize(freqs_.size());
      for (std::size_t k = 0; k < freqs_.size(); ++k) path_[k] = detail::pcb_path_factor(model_.board, freqs_[k]);
    }
  }

  std::size_t size() const noexcept { return freqs_.size(); }

  /// Adds the tap's contribution before the common PCB path factor.
  void add_tap(const TapKnobs& t, std::span<Complex> acc) const {
    const Complex gain = detail::tap_gain(t[kAmpKnob], t[kPhaseKnob]);
    if (model_.kind == ModelKind::kIdeal) {
      for (std::size_t k = 0; k < freqs_.size(); ++k) {
        acc[k] += detail::ideal_tap_value(gain, t[kCenterKnob], t[kQKnob], freqs_[k]);
      }
    } else {
      const double rs = model_.board.r_s_ohm;
      for (std::size_t k = 0; k < freqs_.size(); ++k) {
        const Complex mc = detail::pcb_bpf_mc(t[kCenterKnob], t[kQKnob], model_.board, freqs_[k]);
        acc[k] += (1.0 / (rs * mc)) * gain;
      }
    }
  }

  /// Residual power of an accumulated (pre-path-factor) canceller sum.
  double residual_of(std::span<const Complex> acc) const {
    double sum = 0.0;
    if (model_.kind == ModelKind::kIdeal) {
      for (std::size_t k = 0; k < acc.size(); ++k) sum += std::norm(h_si_[k] - acc[k]);
    } else {
      for (std::size_t k = 0; k < acc.size(); ++k) sum += std::norm(h_si_[k] - path_[k] * acc[k]);
    }
    return std::isfinite(sum) ? sum : std::numeric_limits<double>::quiet_NaN();
  }

  double objective(std::span<const TapKnobs> taps) {
    ++evaluations_;
    std::fill(scratch_.begin(), scratch_.end(), Complex{});
    for (const auto& t : taps) add_tap(t, scratch_);
    return residual_of(scratch_);
  }

  std::size_t evaluations() const noexcept { return evaluations_; }
  void count(std::size_t n) noexcept { evaluations_ += n; }

 private:
  const CancellerModel& model_;
  const ComplexResponse& h_si_;
  std::vector<double> freqs_;
  std::vector<Complex> path_;
  std::vector<Complex> scratch_;
  std::size_t evaluations_ = 0;
};

double wrap_unit(double u) { return u - std::floor(u); }

bool is_periodic(std::size_t d) { return d % kKnobsPerTap == kPhaseKnob; }

// Maps the unit box onto the knob box; the phase coordinate is periodic.
class KnobSpace {
 public:
  KnobSpace(const Bounds& bounds, std::size_t num_taps) : bounds_(bounds), taps_(num_taps) {}

  std::size_t dims() const noexcept { return taps_ * kKnobsPerTap; }
  double range(std::size_t d) const { return span(d).max - span(d).min; }

  std::vector<TapKnobs> knobs(std::span<const double> u) const {
    std::vector<TapKnobs> out(taps_);
    for (std::size_t d = 0; d < dims(); ++d) {
      const double v = is_periodic(d) ? wrap_unit(u[d]) : u[d];
      out[d / kKnobsPerTap][d % kKnobsPerTap] = span(d).min + v * range(d);
    }
    return out;
  }

  std::vector<double> unit(std::span<const TapKnobs> taps) const {
    std::vector<double> u(dims());
    for (std::size_t d = 0; d < dims(); ++d) u[d] = (taps[d / kKnobsPerTap][d % kKnobsPerTap] - span(d).min) / range(d);
    return u;
  }

  void project(std::span<double> u) const {
    for (std::size_t d = 0; d < dims(); ++d) u[d] = is_periodic(d) ? wrap_unit(u[d]) : std::clamp(u[d], 0.0, 1.0);
  }

 private:
  const KnobRange& span(std::size_t d) const { return bounds_.knobs[d % kKnobsPerTap]; }

  Bounds bounds_;
  std::size_t taps_;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct StartResult {
  bool ok = false;
  std::vector<double> u;
  double objective = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
  int iterations = 0;
};

class Descent {
 public:
  Descent(ResidualEvaluator& eval, const KnobSpace& space, const SolveOptions& opts)
      : eval_(eval), space_(space), opts_(opts) {}

  double value(std::span<const double> u) { return eval_.objective(space_.knobs(u)); }

  // Central differences in knob units, scaled to the unit box.
  bool gradient(std::span<const double> u, std::span<double> g) {
    auto taps = space_.knobs(u);
    for (std::size_t d = 0; d < space_.dims(); ++d) {
      double& x = taps[d / kKnobsPerTap][d % kKnobsPerTap];
      const double x0 = x;
      const double h = std::max(opts_.grad_eps * std::abs(x0), kGradFloor);
      x = x0 + h;
      const double fp = eval_.objective(taps);
      x = x0 - h;
      const double fm = eval_.objective(taps);
      x = x0;
      if (!std::isfinite(fp) || !std::isfinite(fm)) return false;
      g[d] = (fp - fm) / (2.0 * h) * space_.range(d);
    }
    return true;
  }

  StartResult run(std::vector<double> u) {
    StartResult r;
    const std::size_t n = u.size();
    space_.project(u);
    double f = value(u);
    if (!std::isfinite(f)) return r;
    r.trace.push_back(f);
    std::vector<double> g(n), g_prev(n), step(n), trial(n);
    if (!gradient(u, g)) return r;
    double alpha = 1.0;
    bool have_prev = false;
    for (int it = 0; it < opts_.max_iters && f > 0.0; ++it) {
      if (have_prev) {
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = g[i] - g_prev[i];
        const double sy = dot(step, y);
        alpha = sy > 0.0 ? dot(step, step) / sy : 2.0 * alpha;
      }
      alpha = std::min(alpha, kMaxStep);
      bool accepted = false;
      double f_new = f;
      for (int bt = 0; bt < kMaxBacktracks; ++bt, alpha *= kShrink) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - alpha * g[i];
        for (std::size_t i = 0; i < n; ++i) {
          if (!is_periodic(i)) trial[i] = std::clamp(trial[i], 0.0, 1.0);
          step[i] = trial[i] - u[i];
        }
        f_new = value(trial);
        if (!std::isfinite(f_new)) return r;
        if (f_new <= f + kArmijoSlope * dot(g, step) && f_new < f) {
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      space_.project(trial);
      const double improvement = (f - f_new) / f;
      u.swap(trial);
      f = f_new;
      r.trace.push_back(f);
      r.iterations = it + 1;
      if (improvement <= opts_.tol) break;
      g_prev.swap(g);
      if (!gradient(u, g)) return r;
      have_prev = true;
    }
    r.ok = true;
    r.u = std::move(u);
    r.objective = f;
    return r;
  }

 private:
  ResidualEvaluator& eval_;
  const KnobSpace& space_;
  const SolveOptions& opts_;
};

std::vector<double> random_start(std::uint64_t seed, int restart, std::size_t dims) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 gen(seq);
  std::vector<double> u(dims);
  for (auto& v : u) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return u;
}

double band_sic(const CancellerModel& model, const ComplexResponse& h_si, std::span<const TapKnobs> config) {
  return rf_sic_db(h_si - model.evaluate(config, h_si.grid())).avg_db;
}

void require_grid_match(const ComplexResponse& a, const ComplexResponse& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("responses are defined on different grids");
}

// Step on a quantized knob grid; periodic grids wrap, and a grid that covers
// the full circle with both endpoints treats them as the same point.
std::optional<std::size_t> neighbour(const KnobQuantization& q, std::size_t i, int dir) {
  const std::size_t n = q.count();
  if (!q.periodic) {
    if (dir < 0 && i == 0) return std::nullopt;
    if (dir > 0 && i + 1 >= n) return std::nullopt;
    return dir > 0 ? i + 1 : i - 1;
  }
  const bool closed = std::abs((q.max - q.min) - 2.0 * kPi) < 1e-12 && q.bits > 0;
  const std::size_t period = closed ? n - 1 : n;
  const std::size_t base = (closed && i == n - 1) ? 0 : i;
  return (base + period + (dir > 0 ? 1 : period - 1)) % period;
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

std::string_view model_name(ModelKind kind) noexcept { return kind == ModelKind::kIdeal ? "ideal" : "pcb"; }

ModelKind parse_model_kind(std::string_view name) {
  if (name == "ideal" || name == "rfic") return ModelKind::kIdeal;
  if (name == "pcb") return ModelKind::kPcb;
  throw InvalidArgument("unknown canceller model '" + std::string(name) + "'");
}

ComplexResponse CancellerModel::evaluate(std::span<const TapKnobs> taps, const FrequencyGrid& grid) const {
  if (kind == ModelKind::kIdeal) {
    const auto cfgs = to_ideal_taps(taps);
    return multi_tap_response(cfgs, grid);
  }
  const auto cfgs = to_pcb_taps(taps);
  return pcb_canceller_response(cfgs, board, grid);
}

std::vector<IdealTapConfig> to_ideal_taps(std::span<const TapKnobs> taps) {
  std::vector<IdealTapConfig> out;
  out.reserve(taps.size());
  for (const auto& t : taps) out.push_back({t[kAmpKnob], t[kPhaseKnob], t[kCenterKnob], t[kQKnob]});
  return out;
}

std::vector<PcbTapConfig> to_pcb_taps(std::span<const TapKnobs> taps) {
  std::vector<PcbTapConfig> out;
  out.reserve(taps.size());
  for (const auto& t : taps) out.push_back({t[kAmpKnob], t[kPhaseKnob], t[kCenterKnob], t[kQKnob]});
  return out;
}

TapKnobs to_knobs(const IdealTapConfig& c) noexcept { return {c.amp_db, c.phase_rad, c.center_hz, c.q}; }
TapKnobs to_knobs(const PcbTapConfig& c) noexcept { return {c.amp_db, c.phase_rad, c.cf_pf, c.cq_pf}; }

void Bounds::validate() const {
  for (const auto& k : knobs) {
    if (!std::isfinite(k.min) || !std::isfinite(k.max) || !(k.min < k.max)) {
      throw InvalidArgument("knob bounds must be finite with min < max");
    }
  }
}

void KnobQuantization::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw InvalidArgument("quantization range must be finite with min < max");
  }
  if (!(step > 0.0) && bits < 1) throw InvalidArgument("quantization needs step > 0 or bits >= 1");
  if (step > 0.0 && bits > 0) throw InvalidArgument("quantization takes either a step or a bit depth, not both");
  if (bits > 24) throw InvalidArgument("quantization bit depth too large");
}

std::size_t KnobQuantization::count() const {
  if (bits > 0) return std::size_t{1} << bits;
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

double KnobQuantization::value(std::size_t index) const {
  if (bits > 0) {
    const std::size_t last = count() - 1;
    if (index == last) return max;
    return min + static_cast<double>(index) * ((max - min) / static_cast<double>(last));
  }
  return min + static_cast<double>(index) * step;
}

std::size_t KnobQuantization::nearest_index(double v) const {
  const std::size_t n = count();
  const double spacing = bits > 0 ? (max - min) / static_cast<double>(n - 1) : step;
  const double guess = std::floor((v - min) / spacing);
  const auto centre = static_cast<std::ptrdiff_t>(std::clamp(guess, 0.0, static_cast<double>(n - 1)));
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = centre - 1; i <= centre + 2; ++i) {
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) continue;
    const double dist = std::abs(v - value(static_cast<std::size_t>(i)));
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<std::size_t>(i);
    }
  }
  return best;
}

void QuantizationSpec::validate() const {
  for (const auto& k : knobs) k.validate();
}

Bounds QuantizationSpec::bounds() const {
  Bounds b;
  for (std::size_t i = 0; i < kKnobsPerTap; ++i) b.knobs[i] = {knobs[i].min, knobs[i].max};
  return b;
}

QuantizationSpec rfic_quantization() {
  QuantizationSpec q;
  q.knobs[kAmpKnob] = {-40.0, -10.0, 0.25, 0, false};
  q.knobs[kPhaseKnob] = {-kPi, kPi, 0.0, 8, true};
  q.knobs[kCenterKnob] = {875e6, 925e6, 0.0, 8, false};
  q.knobs[kQKnob] = {1.0, 50.0, 0.0, 8, false};
  return q;
}

QuantizationSpec pcb_quantization() {
  QuantizationSpec q;
  q.knobs[kAmpKnob] = {-15.5, 0.0, 0.5, 0, false};
  q.knobs[kPhaseKnob] = {-kPi, kPi, 0.0, 8, true};
  q.knobs[kCenterKnob] = {0.6, 2.4, 0.12, 0, false};
  q.knobs[kQKnob] = {2.0, 14.0, 0.39, 0, false};
  return q;
}

Preset preset_by_name(std::string_view name) {
  if (name == "rfic") return {"rfic", ModelKind::kIdeal, rfic_quantization()};
  if (name == "pcb") return {"pcb", ModelKind::kPcb, pcb_quantization()};
  throw InvalidArgument("unknown preset '" + std::string(name) + "' (expected rfic or pcb)");
}

Preset preset_for(ModelKind kind) { return preset_by_name(kind == ModelKind::kIdeal ? "rfic" : "pcb"); }

void SolveOptions::validate() const {
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (!(grad_eps > 0.0)) throw InvalidArgument("grad_eps must be > 0");
  if (!(tol >= 0.0)) throw InvalidArgument("tol must be >= 0");
}

std::string report_to_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["model"] = model_name(r.model);
  j["quantized"] = r.quantized;
  auto& cfg = j["config"] = nlohmann::ordered_json::array();
  for (const auto& t : r.config) {
    nlohmann::ordered_json tap;
    tap["amp_db"] = t[kAmpKnob];
    tap["phase_rad"] = t[kPhaseKnob];
    if (r.model == ModelKind::kIdeal) {
      tap["center_hz"] = t[kCenterKnob];
      tap["q"] = t[kQKnob];
    } else {
      tap["cf_pf"] = t[kCenterKnob];
      tap["cq_pf"] = t[kQKnob];
    }
    cfg.push_back(std::move(tap));
  }
  j["objective"] = r.objective;
  j["avg_sic_db"] = number_or_null(r.avg_sic_db);
  j["iterations"] = r.iterations;
  j["restart"] = r.restart;
  j["evaluations"] = r.evaluations;
  j["trace"] = r.trace;
  return j.dump(2) + "\n";
}

SolveReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SolveReport r;
    r.model = parse_model_kind(j.at("model").get<std::string>());
    r.quantized = j.at("quantized").get<bool>();
    const char* center_key = r.model == ModelKind::kIdeal ? "center_hz" : "cf_pf";
    const char* q_key = r.model == ModelKind::kIdeal ? "q" : "cq_pf";
    for (const auto& tap : j.at("config")) {
      r.config.push_back({tap.at("amp_db").get<double>(), tap.at("phase_rad").get<double>(),
                          tap.at(center_key).get<double>(), tap.at(q_key).get<double>()});
    }
    r.objective = j.at("objective").get<double>();
    r.avg_sic_db = number_from(j.at("avg_sic_db"));
    r.iterations = j.at("iterations").get<int>();
    r.restart = j.at("restart").get<int>();
    r.evaluations = j.at("evaluations").get<std::size_t>();
    r.trace = j.at("trace").get<std::vector<double>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("solve report: ") + e.what());
  }
}

double residual_objective(const ComplexResponse& h_si, const ComplexResponse& h_canc) {
  require_grid_match(h_si, h_canc);
  double sum = 0.0;
  for (std::size_t k = 0; k < h_si.size(); ++k) sum += std::norm(h_si[k] - h_canc[k]);
  return sum;
}

SolveReport solve_continuous(const CancellerModel& model, const ComplexResponse& h_si, const Bounds& bounds,
                             const SolveOptions& opts, std::size_t num_taps) {
  opts.validate();
  bounds.validate();
  if (num_taps == 0) throw InvalidArgument("canceller needs at least one tap");
  if (!(h_si.grid().front() > 0.0)) throw InvalidArgument("grid frequencies must be positive");

  ResidualEvaluator eval(model, h_si);
  const KnobSpace space(bounds, num_taps);
  Descent descent(eval, space, opts);

  StartResult best;
  int best_index = -1;
  for (int r = 0; r < opts.restarts; ++r) {
    StartResult res = descent.run(random_start(opts.seed, r, space.dims()));
    if (res.ok && (best_index < 0 || res.objective < best.objective)) {
      best = std::move(res);
      best_index = r;
    }
  }
  if (best_index < 0) throw SolverFailure("every start of the descent produced a non-finite objective");

  SolveReport report;
  report.model = model.kind;
  report.config = space.knobs(best.u);
  report.objective = best.objective;
  report.avg_sic_db = band_sic(model, h_si, report.config);
  report.iterations = best.iterations;
  report.restart = best_index;
  report.trace = std::move(best.trace);
  report.evaluations = eval.evaluations();
  return report;
}

std::vector<TapKnobs> quantize_config(std::span<const TapKnobs> config, const QuantizationSpec& spec) {
  spec.validate();
  std::vector<TapKnobs> out(config.begin(), config.end());
  for (auto& tap : out) {
    for (std::size_t d = 0; d < kKnobsPerTap; ++d) {
      const auto& q = spec.knobs[d];
      const double slack = 1e-9 * (q.max - q.min);
      if (!(tap[d] >= q.min - slack && tap[d] <= q.max + slack)) {
        throw InvalidArgument("knob " + std::to_string(d) + " value " + std::to_string(tap[d]) +
                              " outside quantization range");
      }
      tap[d] = q.value(q.nearest_index(tap[d]));
    }
  }
  return out;
}

SolveReport local_search(std::span<const TapKnobs> qconfig, const CancellerModel& model, const ComplexResponse& h_si,
                         const QuantizationSpec& spec, int max_rounds) {
  spec.validate();
  if (qconfig.empty()) throw InvalidArgument("canceller needs at least one tap");
  if (max_rounds < 1) throw InvalidArgument("max_rounds must be >= 1");

  std::vector<std::array<std::size_t, kKnobsPerTap>> idx(qconfig.size());
  std::vector<TapKnobs> cur(qconfig.begin(), qconfig.end());
  for (std::size_t t = 0; t < cur.size(); ++t) {
    for (std::size_t d = 0; d < kKnobsPerTap; ++d) {
      const auto& q = spec.knobs[d];
      idx[t][d] = q.nearest_index(cur[t][d]);
      if (std::abs(q.value(idx[t][d]) - cur[t][d]) > 1e-9 * (q.max - q.min)) {
        throw InvalidArgument("local search start is not on the quantization grid");
      }
      cur[t][d] = q.value(idx[t][d]);
    }
  }

  ResidualEvaluator eval(model, h_si);
  double f = eval.objective(cur);
  if (!std::isfinite(f)) throw SolverFailure("non-finite objective at local search start");

  SolveReport report;
  report.model = model.kind;
  report.quantized = true;
  report.trace.push_back(f);
  int rounds = 0;
  while (rounds < max_rounds) {
    ++rounds;
    bool improved = false;
    for (std::size_t t = 0; t < cur.size(); ++t) {
      for (std::size_t d = 0; d < kKnobsPerTap; ++d) {
        const auto& q = spec.knobs[d];
        for (int dir : {+1, -1}) {
          const auto next = neighbour(q, idx[t][d], dir);
          if (!next) continue;
          const double saved = cur[t][d];
          cur[t][d] = q.value(*next);
          const double cand = eval.objective(cur);
          if (std::isfinite(cand) && cand < f) {
            f = cand;
            idx[t][d] = *next;
            improved = true;
            break;
          }
          cur[t][d] = saved;
        }
      }
    }
    report.trace.push_back(f);
    if (!improved) break;
  }

  report.config = std::move(cur);
  report.objective = f;
  report.avg_sic_db = band_sic(model, h_si, report.config);
  report.iterations = rounds;
  report.evaluations = eval.evaluations();
  return report;
}

std::vector<double> default_cancellation_frequencies(const FrequencyGrid& grid, std::size_t num_taps) {
  if (num_taps == 0) throw InvalidArgument("canceller needs at least one tap");
  std::vector<double> out(num_taps);
  const double width = grid.bandwidth() / static_cast<double>(num_taps);
  for (std::size_t i = 0; i < num_taps; ++i) out[i] = grid.front() + (static_cast<double>(i) + 0.5) * width;
  return out;
}

HeuristicResult iterative_heuristic(const CancellerModel& model, const ComplexResponse& h_si,
                                    std::span<const double> canc_freqs, const Bounds& bounds,
                                    const std::optional<QuantizationSpec>& quantization, const SolveOptions& opts) {
  constexpr std::size_t kWindow = 3;
  const auto& grid = h_si.grid();
  if (canc_freqs.empty()) throw InvalidArgument("canceller needs at least one tap");
  if (grid.size() < kWindow) throw InsufficientGrid("iterative heuristic needs at least 3 grid points");
  for (double f : canc_freqs) {
    if (!(f >= grid.front() && f <= grid.back())) {
      throw InvalidArgument("cancellation frequency " + std::to_string(f) + " Hz outside the grid span");
    }
  }

  HeuristicResult result;
  auto& report = result.report;
  report.model = model.kind;
  report.quantized = quantization.has_value();
  ComplexResponse residual = h_si;
  report.trace.push_back(residual_objective(residual, ComplexResponse(grid)));

  for (double fc : canc_freqs) {
    const std::size_t centre = grid.nearest_index(fc);
    const std::size_t first = std::min(centre == 0 ? 0 : centre - 1, grid.size() - kWindow);
    const FrequencyGrid window = grid.slice(first, kWindow);
    const std::vector<Complex> window_vals(residual.values().begin() + static_cast<std::ptrdiff_t>(first),
                                           residual.values().begin() + static_cast<std::ptrdiff_t>(first + kWindow));
    const ComplexResponse target(window, window_vals);

    SolveReport fit = solve_continuous(model, target, bounds, opts, 1);
    report.evaluations += fit.evaluations;
    TapKnobs tap = fit.config.front();
    if (quantization) tap = quantize_config(std::span<const TapKnobs>(&tap, 1), *quantization).front();

    const std::array<TapKnobs, 1> one{tap};
    WindowFit wf;
    wf.center_index = centre;
    wf.before = residual_objective(target, ComplexResponse(window));
    wf.after = residual_objective(target, model.evaluate(one, window));
    result.windows.push_back(wf);

    residual -= model.evaluate(one, grid);
    report.config.push_back(tap);
    report.trace.push_back(residual_objective(residual, ComplexResponse(grid)));
    ++report.iterations;
  }

  report.objective = residual_objective(h_si, model.evaluate(report.config, grid));
  report.avg_sic_db = band_sic(model, h_si, report.config);
  return result;
}

std::vector<double> lattice_values(const KnobQuantization& knob, std::size_t points) {
  knob.validate();
  if (points == 0) throw InvalidArgument("points_per_knob must be >= 1");
  const std::size_t n = knob.count();
  std::vector<double> out;
  if (points >= n) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(knob.value(i));
    return out;
  }
  if (points == 1) return {knob.value(n / 2)};
  for (std::size_t j = 0; j < points; ++j) {
    const double pos = static_cast<double>(j) * static_cast<double>(n - 1) / static_cast<double>(points - 1);
    out.push_back(knob.value(static_cast<std::size_t>(std::llround(pos))));
  }
  return out;
}

SolveReport grid_search_oracle(const CancellerModel& model, const ComplexResponse& h_si, const QuantizationSpec& spec,
                               std::size_t points_per_knob, std::size_t num_taps) {
  spec.validate();
  if (num_taps < 1 || num_taps > 2) throw InvalidArgument("grid search supports 1 or 2 taps");

  std::array<std::vector<double>, kKnobsPerTap> axes;
  double per_tap = 1.0;
  for (std::size_t d = 0; d < kKnobsPerTap; ++d) {
    axes[d] = lattice_values(spec.knobs[d], points_per_knob);
    per_tap *= static_cast<double>(axes[d].size());
  }
  const double total = std::pow(per_tap, static_cast<double>(num_taps));
  if (total > kMaxLatticeSize) {
    throw LatticeTooLarge("lattice of " + std::to_string(static_cast<long long>(total)) +
                              " configurations exceeds the 1e7 limit",
                          total);
  }

  std::vector<TapKnobs> singles;
  singles.reserve(static_cast<std::size_t>(per_tap));
  for (double a : axes[0])
    for (double p : axes[1])
      for (double c : axes[2])
        for (double q : axes[3]) singles.push_back({a, p, c, q});

  ResidualEvaluator eval(model, h_si);
  const std::size_t kpts = eval.size();
  SolveReport report;
  report.model = model.kind;
  report.quantized = true;
  double best = std::numeric_limits<double>::infinity();

  if (num_taps == 1) {
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < singles.size(); ++i) {
      const double f = eval.objective(std::span<const TapKnobs>(&singles[i], 1));
      if (f < best) {
        best = f;
        best_i = i;
        report.trace.push_back(f);
      }
    }
    report.config = {singles[best_i]};
  } else {
    // Pre-path-factor responses of every single-tap lattice point.
    std::vector<Complex> table(singles.size() * kpts);
    for (std::size_t i = 0; i < singles.size(); ++i) {
      std::vector<Complex> acc(kpts);
      eval.add_tap(singles[i], acc);
      std::copy(acc.begin(), acc.end(), table.begin() + static_cast<std::ptrdiff_t>(i * kpts));
    }
    std::vector<Complex> acc(kpts);
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < singles.size(); ++i) {
      for (std::size_t j = i; j < singles.size(); ++j) {
        for (std::size_t k = 0; k < kpts; ++k) acc[k] = (Complex{} + table[i * kpts + k]) + table[j * kpts + k];
        const double f = eval.residual_of(acc);
        eval.count(1);
        if (f < best) {
          best = f;
          bi = i;
          bj = j;
          report.trace.push_back(f);
        }
      }
    }
    report.config = {singles[bi], singles[bj]};
  }
  if (!std::isfinite(best)) throw SolverFailure("no lattice configuration has a finite objective");

  report.objective = best;
  report.avg_sic_db = band_sic(model, h_si, report.config);
  report.evaluations = eval.evaluations();
  return report;
}

}  // namespace fdecanc
