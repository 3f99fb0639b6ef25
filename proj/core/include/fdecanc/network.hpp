// SPDX-License-Identifier: Apache-2.0
//
// Shannon-rate throughput of half- and full-duplex networks with one FD base
// station, and a slot-level evaluator for two TDMA schedules.
//
// All SNR/INR arguments are linear ratios. gamma_self is the residual
// self-interference-to-noise ratio of an FD link.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdecanc {

/// Power ratio in dB to linear, 10^(db/10).
double snr_from_db(double db);

/// B * log2(1 + gamma).
double shannon_rate(double gamma, double bandwidth_hz);

/// One FD base station, an HD uplink user and an HD downlink user.
struct UlDlScenario {
  double gamma_ul = 10.0;
  double gamma_dl = 10.0;
  double gamma_iui = 1.0;   ///< interference of the UL user at the DL user
  double gamma_self = 1.0;
  double bandwidth_hz = 20e6;

  void validate() const;
};

struct UlDlThroughput {
  double hd_bps = 0.0;  ///< UL and DL time-shared
  double fd_bps = 0.0;  ///< UL and DL concurrent
  double gain = 0.0;
};

UlDlThroughput uldl_throughputs(const UlDlScenario& s);

/// FD base station serving 2 or 3 users with symmetric UL/DL SNR.
struct MultiUserScenario {
  std::vector<double> gamma;
  std::vector<bool> fd_capable;
  double gamma_self = 1.0;
  double bandwidth_hz = 20e6;

  std::size_t users() const noexcept { return gamma.size(); }
  void validate() const;
};

/// Per-user analytical TDMA throughput: an HD user gets (B/n) log2(1 + g),
/// an FD user (2B/n) log2(1 + g/(1 + gamma_self)) for UL plus DL in its
/// 1/n time share. For two users this reproduces the HD, HD-FD and FD
/// network throughput expressions term by term.
std::vector<double> analytic_user_throughputs(const MultiUserScenario& s);

/// Network throughput of two users for every FD capability set; gains are
/// relative to the all-HD case. The scenario's fd_capable flags are ignored.
struct ThreeNodeThroughput {
  double hd_bps = 0.0;
  double user1_fd_bps = 0.0;
  double user2_fd_bps = 0.0;
  double both_fd_bps = 0.0;
  double user1_fd_gain = 0.0;
  double user2_fd_gain = 0.0;
  double both_fd_gain = 0.0;
};

ThreeNodeThroughput three_node_throughputs(const MultiUserScenario& s);

/// (sum x)^2 / (n sum x^2). Throws UndefinedGain if every entry is zero.
double jain_fairness(std::span<const double> throughputs);

enum class ScheduleKind { kRoundRobinOpportunistic, kIuiFree };

std::string_view schedule_name(ScheduleKind kind) noexcept;
ScheduleKind parse_schedule_kind(std::string_view name);

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::kRoundRobinOpportunistic;
  std::size_t slots = 12;
  /// iui[i][j]: interference of user i's uplink at user j, linear.
  std::vector<std::vector<double>> iui;

  void validate(std::size_t users) const;
};

/// iui matrix with `gamma_iui` everywhere off the diagonal.
std::vector<std::vector<double>> uniform_iui(std::size_t users, double gamma_iui);

inline constexpr int kNoUser = -1;

struct SlotActivity {
  std::size_t primary = 0;
  int ul_user = kNoUser;
  int dl_user = kNoUser;
  double ul_sinr = 0.0;
  double dl_sinr = 0.0;
};

struct ScheduleResult {
  std::vector<double> per_user_bps;  ///< slot-averaged UL + DL rate
  double total_bps = 0.0;
  double jfi = 0.0;
  std::vector<SlotActivity> slots;
};

/// Slot t has primary user p = t mod n.
///
/// Round-robin opportunistic: an FD primary sends UL and receives DL in the
/// same slot. An HD primary sends UL while the base station serves DL to
/// another user, interfered by the primary's uplink; on p's k-th turn that
/// user is the k-th (cyclically) of p+1, p+2, ... mod n.
///
/// IUI-free: an FD primary is served as above. An HD primary alternates
/// UL-only and DL-only turns, so no two users ever share a slot.
ScheduleResult tdma_schedule_eval(const MultiUserScenario& s, const ScheduleSpec& sched);

/// Documented heterogeneous instances: 2 users (3 nodes) and 3 users (4 nodes).
struct NetworkInstance {
  MultiUserScenario scenario;
  ScheduleSpec schedule;
};

NetworkInstance default_three_node_instance();
NetworkInstance default_four_node_instance();

struct NetworkRow {
  std::string scenario_id;
  std::string case_name;
  double total_bps = 0.0;
  double jfi = 0.0;
  double gain = 0.0;
};

std::vector<NetworkRow> uldl_rows(const std::string& id, const UlDlScenario& s);
std::vector<NetworkRow> three_node_rows(const std::string& id, const MultiUserScenario& s);
std::vector<NetworkRow> tdma_rows(const std::string& id, const MultiUserScenario& s, const ScheduleSpec& sched);

/// Evaluates a JSON scenario file (one object, an array, or {"scenarios": [...]}).
std::vector<NetworkRow> evaluate_scenario_json(std::string_view json);

/// CSV `scenario_id,case,total_bps,jfi,gain`.
std::string format_network_csv(std::span<const NetworkRow> rows);

}  // namespace fdecanc
