// SPDX-License-Identifier: Apache-2.0

#include "fdecanc/network.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "fdecanc/error.hpp"
#include "fdecanc/io.hpp"
#include "json.hpp"

namespace fdecanc {

namespace {

void require_gamma(double g, const char* what) {
  if (!std::isfinite(g) || g < 0.0) throw InvalidArgument(std::string(what) + " must be finite and >= 0");
}

void require_bandwidth(double b) {
  if (!std::isfinite(b) || !(b > 0.0)) throw InvalidArgument("bandwidth must be finite and > 0");
}

double gain_of(double rate, double baseline) {
  if (!(baseline > 0.0)) throw UndefinedGain("half-duplex baseline throughput is zero");
  return rate / baseline;
}

double fd_snr(double gamma, double gamma_self) { return gamma / (1.0 + gamma_self); }

using json = nlohmann::json;

double db_field(const json& j, const char* key) { return snr_from_db(j.at(key).get<double>()); }

MultiUserScenario users_from_json(const json& j) {
  MultiUserScenario s;
  for (const auto& g : j.at("gamma_db")) s.gamma.push_back(snr_from_db(g.get<double>()));
  if (j.contains("fd")) {
    for (const auto& f : j.at("fd")) s.fd_capable.push_back(f.get<bool>());
  } else {
    s.fd_capable.assign(s.gamma.size(), false);
  }
  s.gamma_self = j.value("gamma_self", 1.0);
  s.bandwidth_hz = j.value("bandwidth_hz", 20e6);
  return s;
}

std::vector<NetworkRow> evaluate_one(const json& j, std::size_t index) {
  const std::string type = j.at("type").get<std::string>();
  const std::string id = j.value("id", type + std::to_string(index));
  if (type == "uldl") {
    UlDlScenario s;
    s.gamma_ul = db_field(j, "gamma_ul_db");
    s.gamma_dl = db_field(j, "gamma_dl_db");
    s.gamma_iui = db_field(j, "gamma_iui_db");
    s.gamma_self = j.value("gamma_self", 1.0);
    s.bandwidth_hz = j.value("bandwidth_hz", 20e6);
    return uldl_rows(id, s);
  }
  if (type == "threenode") return three_node_rows(id, users_from_json(j));
  if (type == "tdma") {
    const MultiUserScenario s = users_from_json(j);
    ScheduleSpec sched;
    sched.kind = parse_schedule_kind(j.value("schedule", std::string("rro")));
    sched.slots = j.value("slots", std::size_t{12});
    if (j.contains("iui")) {
      sched.iui = j.at("iui").get<std::vector<std::vector<double>>>();
    } else {
      sched.iui = uniform_iui(s.users(), db_field(j, "iui_db"));
    }
    return tdma_rows(id, s, sched);
  }
  throw FormatError("scenario '" + id + "': unknown type '" + type + "'");
}

}  // namespace

double snr_from_db(double db) {
  if (!std::isfinite(db)) throw InvalidArgument("dB value must be finite");
  return std::pow(10.0, db / 10.0);
}

double shannon_rate(double gamma, double bandwidth_hz) {
  require_gamma(gamma, "SNR");
  require_bandwidth(bandwidth_hz);
  return bandwidth_hz * std::log2(1.0 + gamma);
}

void UlDlScenario::validate() const {
  require_gamma(gamma_ul, "gamma_ul");
  require_gamma(gamma_dl, "gamma_dl");
  require_gamma(gamma_iui, "gamma_iui");
  require_gamma(gamma_self, "gamma_self");
  require_bandwidth(bandwidth_hz);
}

UlDlThroughput uldl_throughputs(const UlDlScenario& s) {
  s.validate();
  const double b = s.bandwidth_hz;
  UlDlThroughput out;
  out.hd_bps = shannon_rate(s.gamma_ul, b / 2.0) + shannon_rate(s.gamma_dl, b / 2.0);
  out.fd_bps = shannon_rate(fd_snr(s.gamma_ul, s.gamma_self), b) + shannon_rate(s.gamma_dl / (1.0 + s.gamma_iui), b);
  out.gain = gain_of(out.fd_bps, out.hd_bps);
  return out;
}

void MultiUserScenario::validate() const {
  if (gamma.size() < 2 || gamma.size() > 3) throw InvalidArgument("scenario needs 2 or 3 users");
  if (fd_capable.size() != gamma.size()) throw InvalidArgument("one FD flag per user is required");
  for (double g : gamma) require_gamma(g, "user SNR");
  require_gamma(gamma_self, "gamma_self");
  require_bandwidth(bandwidth_hz);
}

std::vector<double> analytic_user_throughputs(const MultiUserScenario& s) {
  s.validate();
  const double share = s.bandwidth_hz / static_cast<double>(s.users());
  std::vector<double> out(s.users());
  for (std::size_t i = 0; i < s.users(); ++i) {
    out[i] = s.fd_capable[i] ? 2.0 * shannon_rate(fd_snr(s.gamma[i], s.gamma_self), share)
                             : shannon_rate(s.gamma[i], share);
  }
  return out;
}

ThreeNodeThroughput three_node_throughputs(const MultiUserScenario& s) {
  if (s.users() != 2) throw InvalidArgument("three-node throughput needs exactly 2 users");
  s.validate();
  const double b = s.bandwidth_hz;
  const double hd1 = shannon_rate(s.gamma[0], b / 2.0);
  const double hd2 = shannon_rate(s.gamma[1], b / 2.0);
  const double fd1 = shannon_rate(fd_snr(s.gamma[0], s.gamma_self), b);
  const double fd2 = shannon_rate(fd_snr(s.gamma[1], s.gamma_self), b);
  ThreeNodeThroughput out;
  out.hd_bps = hd1 + hd2;
  out.user1_fd_bps = fd1 + hd2;
  out.user2_fd_bps = fd2 + hd1;
  out.both_fd_bps = fd1 + fd2;
  out.user1_fd_gain = gain_of(out.user1_fd_bps, out.hd_bps);
  out.user2_fd_gain = gain_of(out.user2_fd_bps, out.hd_bps);
  out.both_fd_gain = gain_of(out.both_fd_bps, out.hd_bps);
  return out;
}

double jain_fairness(std::span<const double> x) {
  if (x.empty()) throw InvalidArgument("fairness needs at least one throughput");
  double sum = 0.0;
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("throughputs must be finite and >= 0");
    sum += v;
    sq += v * v;
  }
  if (sq == 0.0) throw UndefinedGain("fairness of all-zero throughputs is undefined");
  return sum * sum / (static_cast<double>(x.size()) * sq);
}

std::string_view schedule_name(ScheduleKind kind) noexcept {
  return kind == ScheduleKind::kIuiFree ? "iuif" : "rro";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "rro") return ScheduleKind::kRoundRobinOpportunistic;
  if (name == "iuif" || name == "iui-f") return ScheduleKind::kIuiFree;
  throw InvalidArgument("unknown schedule '" + std::string(name) + "' (expected rro or iuif)");
}

void ScheduleSpec::validate(std::size_t users) const {
  if (slots < users) throw InvalidArgument("schedule needs at least one slot per user");
  if (iui.size() != users) throw InvalidArgument("iui matrix must be users x users");
  for (std::size_t i = 0; i < users; ++i) {
    if (iui[i].size() != users) throw InvalidArgument("iui matrix must be users x users");
    for (std::size_t j = 0; j < users; ++j) {
      require_gamma(iui[i][j], "iui entry");
      if (i == j && iui[i][j] != 0.0) throw InvalidArgument("iui matrix must have a zero diagonal");
    }
  }
}

std::vector<std::vector<double>> uniform_iui(std::size_t users, double gamma_iui) {
  std::vector<std::vector<double>> m(users, std::vector<double>(users, gamma_iui));
  for (std::size_t i = 0; i < users; ++i) m[i][i] = 0.0;
  return m;
}

ScheduleResult tdma_schedule_eval(const MultiUserScenario& s, const ScheduleSpec& sched) {
  s.validate();
  sched.validate(s.users());
  const std::size_t n = s.users();
  const double b = s.bandwidth_hz;
  ScheduleResult out;
  out.per_user_bps.assign(n, 0.0);

  for (std::size_t t = 0; t < sched.slots; ++t) {
    const std::size_t p = t % n;
    const std::size_t turn = t / n;
    SlotActivity a;
    a.primary = p;
    if (s.fd_capable[p]) {
      a.ul_user = a.dl_user = static_cast<int>(p);
      a.ul_sinr = a.dl_sinr = fd_snr(s.gamma[p], s.gamma_self);
    } else if (sched.kind == ScheduleKind::kRoundRobinOpportunistic) {
      const std::size_t q = (p + 1 + turn % (n - 1)) % n;
      a.ul_user = static_cast<int>(p);
      a.ul_sinr = fd_snr(s.gamma[p], s.gamma_self);
      a.dl_user = static_cast<int>(q);
      a.dl_sinr = s.gamma[q] / (1.0 + sched.iui[p][q]);
    } else if (turn % 2 == 0) {
      a.ul_user = static_cast<int>(p);
      a.ul_sinr = s.gamma[p];
    } else {
      a.dl_user = static_cast<int>(p);
      a.dl_sinr = s.gamma[p];
    }
    if (a.ul_user != kNoUser) out.per_user_bps[static_cast<std::size_t>(a.ul_user)] += shannon_rate(a.ul_sinr, b);
    if (a.dl_user != kNoUser) out.per_user_bps[static_cast<std::size_t>(a.dl_user)] += shannon_rate(a.dl_sinr, b);
    out.slots.push_back(a);
  }

  const auto slots = static_cast<double>(sched.slots);
  for (double& r : out.per_user_bps) r /= slots;
  out.total_bps = std::accumulate(out.per_user_bps.begin(), out.per_user_bps.end(), 0.0);
  out.jfi = jain_fairness(out.per_user_bps);
  return out;
}

NetworkInstance default_three_node_instance() {
  NetworkInstance inst;
  inst.scenario.gamma = {snr_from_db(20.0), snr_from_db(10.0)};
  inst.scenario.fd_capable = {true, false};
  inst.schedule.slots = 12;
  inst.schedule.iui = uniform_iui(2, snr_from_db(10.0));
  return inst;
}

NetworkInstance default_four_node_instance() {
  NetworkInstance inst;
  inst.scenario.gamma = {snr_from_db(25.0), snr_from_db(20.0), snr_from_db(15.0)};
  inst.scenario.fd_capable = {true, true, false};
  inst.schedule.slots = 12;
  inst.schedule.iui = uniform_iui(3, snr_from_db(10.0));
  return inst;
}

std::vector<NetworkRow> uldl_rows(const std::string& id, const UlDlScenario& s) {
  const UlDlThroughput t = uldl_throughputs(s);
  const double links[] = {shannon_rate(fd_snr(s.gamma_ul, s.gamma_self), s.bandwidth_hz),
                          shannon_rate(s.gamma_dl / (1.0 + s.gamma_iui), s.bandwidth_hz)};
  double jfi = 0.0;
  if (links[0] + links[1] > 0.0) jfi = jain_fairness(links);
  return {{id, "fd", t.fd_bps, jfi, t.gain}};
}

std::vector<NetworkRow> three_node_rows(const std::string& id, const MultiUserScenario& s) {
  const ThreeNodeThroughput t = three_node_throughputs(s);
  std::vector<NetworkRow> rows;
  const bool sets[4][2] = {{false, false}, {true, false}, {false, true}, {true, true}};
  const char* names[4] = {"hd", "user1_fd", "user2_fd", "both_fd"};
  const double totals[4] = {t.hd_bps, t.user1_fd_bps, t.user2_fd_bps, t.both_fd_bps};
  const double gains[4] = {1.0, t.user1_fd_gain, t.user2_fd_gain, t.both_fd_gain};
  for (int c = 0; c < 4; ++c) {
    MultiUserScenario v = s;
    v.fd_capable = {sets[c][0], sets[c][1]};
    const auto per_user = analytic_user_throughputs(v);
    rows.push_back({id, names[c], totals[c], jain_fairness(per_user), gains[c]});
  }
  return rows;
}

std::vector<NetworkRow> tdma_rows(const std::string& id, const MultiUserScenario& s, const ScheduleSpec& sched) {
  const ScheduleResult r = tdma_schedule_eval(s, sched);
  MultiUserScenario hd = s;
  hd.fd_capable.assign(s.users(), false);
  const auto base = analytic_user_throughputs(hd);
  const double hd_total = std::accumulate(base.begin(), base.end(), 0.0);
  return {{id, std::string(schedule_name(sched.kind)), r.total_bps, r.jfi, gain_of(r.total_bps, hd_total)}};
}

std::vector<NetworkRow> evaluate_scenario_json(std::string_view text) {
  std::vector<NetworkRow> rows;
  try {
    const json doc = json::parse(text);
    const json& list = doc.is_object() && doc.contains("scenarios") ? doc.at("scenarios") : doc;
    if (list.is_array()) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        auto r = evaluate_one(list[i], i);
        rows.insert(rows.end(), r.begin(), r.end());
      }
    } else {
      rows = evaluate_one(list, 0);
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("scenario file: ") + e.what());
  }
  return rows;
}

std::string format_network_csv(std::span<const NetworkRow> rows) {
  std::string out = "scenario_id,case,total_bps,jfi,gain\n";
  for (const auto& r : rows) {
    out += r.scenario_id + ',' + r.case_name + ',' + format_double(r.total_bps) + ',' + format_double(r.jfi) + ',' +
           format_double(r.gain) + '\n';
  }
  return out;
}

}  // namespace fdecanc
