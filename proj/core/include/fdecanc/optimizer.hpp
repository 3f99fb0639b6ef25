// SPDX-License-Identifier: Apache-2.0
//
// Canceller configuration: fit the sum of M FDE taps to a self-interference
// channel by minimizing the residual power sum_k |H_SI(f_k) - H(f_k)|^2.
//
// Every tap has four knobs, stored in a TapKnobs array in this order:
//
//   index  ideal (RFIC) model    PCB model
//   0      amplitude, dB         amplitude, dB
//   1      phase, rad            phase, rad
//   2      center frequency, Hz  C_F, pF
//   3      quality factor        C_Q, pF
//
// The continuous solver is a multi-start projected gradient descent on the
// box-constrained knobs (phase is periodic). Quantized configurations are
// obtained by rounding and refined with a coordinate-wise local search. An
// iterative per-tap heuristic and an exhaustive lattice search are provided
// as baselines and test oracles.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdecanc/core.hpp"
#include "fdecanc/models.hpp"

namespace fdecanc {

enum class ModelKind { kIdeal, kPcb };

std::string_view model_name(ModelKind kind) noexcept;
ModelKind parse_model_kind(std::string_view name);

inline constexpr std::size_t kKnobsPerTap = 4;
enum Knob : std::size_t { kAmpKnob = 0, kPhaseKnob = 1, kCenterKnob = 2, kQKnob = 3 };

using TapKnobs = std::array<double, kKnobsPerTap>;

/// Canceller family plus the fixed board constants of the PCB family.
struct CancellerModel {
  ModelKind kind = ModelKind::kIdeal;
  PcbBoardParams board{};

  static CancellerModel ideal() { return {}; }
  static CancellerModel pcb(const PcbBoardParams& board = {}) { return {ModelKind::kPcb, board}; }

  ComplexResponse evaluate(std::span<const TapKnobs> taps, const FrequencyGrid& grid) const;
};

std::vector<IdealTapConfig> to_ideal_taps(std::span<const TapKnobs> taps);
std::vector<PcbTapConfig> to_pcb_taps(std::span<const TapKnobs> taps);
TapKnobs to_knobs(const IdealTapConfig& cfg) noexcept;
TapKnobs to_knobs(const PcbTapConfig& cfg) noexcept;

struct KnobRange {
  double min = 0.0;
  double max = 1.0;
};

/// Per-knob box constraints, identical for every tap.
struct Bounds {
  std::array<KnobRange, kKnobsPerTap> knobs{};

  void validate() const;
};

/// Discrete values of one knob: either `min + i*step` up to `max`, or 2^bits
/// equally spaced values including both endpoints.
struct KnobQuantization {
  double min = 0.0;
  double max = 1.0;
  double step = 0.0;
  int bits = 0;
  bool periodic = false;

  void validate() const;
  std::size_t count() const;
  double value(std::size_t index) const;
  /// Nearest grid index; ties go to the smaller value.
  std::size_t nearest_index(double v) const;
};

struct QuantizationSpec {
  std::array<KnobQuantization, kKnobsPerTap> knobs{};

  void validate() const;
  Bounds bounds() const;
};

/// Named constraint set: `rfic` (ideal model) or `pcb`.
struct Preset {
  std::string name;
  ModelKind kind;
  QuantizationSpec quantization;
};

/// A in [-40, -10] dB @ 0.25 dB; phase, f_c in [875, 925] MHz and Q in [1, 50] @ 8 bits.
QuantizationSpec rfic_quantization();
/// A in [-15.5, 0] dB @ 0.5 dB; phase @ 8 bits; C_F in [0.6, 2.4] pF @ 0.12 pF;
/// C_Q in [2, 14] pF @ 0.39 pF.
QuantizationSpec pcb_quantization();
Preset preset_by_name(std::string_view name);
Preset preset_for(ModelKind kind);

struct SolveOptions {
  int restarts = 16;
  int max_iters = 500;
  double grad_eps = 1e-6;  ///< relative finite-difference step, floored at 1e-9
  double tol = 1e-10;      ///< relative objective improvement that ends a start
  std::uint64_t seed = 0;

  void validate() const;
};

struct SolveReport {
  ModelKind model = ModelKind::kIdeal;
  std::vector<TapKnobs> config;
  double objective = 0.0;   ///< sum_k |H_res(f_k)|^2
  double avg_sic_db = 0.0;  ///< band-average RF SIC of the residual
  int iterations = 0;       ///< descent iterations / search rounds of the winner
  int restart = 0;          ///< index of the winning start
  std::vector<double> trace;
  bool quantized = false;
  std::size_t evaluations = 0;  ///< objective evaluations across all work
};

std::string report_to_json(const SolveReport& report);
SolveReport report_from_json(std::string_view json);

/// sum_k |h_si(f_k) - h_canc(f_k)|^2; throws InvalidArgument on grid mismatch.
double residual_objective(const ComplexResponse& h_si, const ComplexResponse& h_canc);

/// Multi-start projected gradient descent over `num_taps` taps.
///
/// Each start draws knobs uniformly inside `bounds`, then iterates projected
/// steps along the central-difference gradient with a Barzilai-Borwein trial
/// step and Armijo backtracking (shrink 0.5, slope 1e-4), so the trace of
/// every start is non-increasing. A start whose objective turns non-finite is
/// dropped; if all are dropped SolverFailure is thrown. The lowest objective
/// wins, ties going to the lowest restart index.
SolveReport solve_continuous(const CancellerModel& model, const ComplexResponse& h_si, const Bounds& bounds,
                             const SolveOptions& opts, std::size_t num_taps);

/// Snaps every knob to its nearest quantized value (phase on the periodic
/// grid). Throws InvalidArgument for knobs outside [min, max].
std::vector<TapKnobs> quantize_config(std::span<const TapKnobs> config, const QuantizationSpec& spec);

/// Coordinate-wise +/-1 step hill climbing on the quantization grid, repeated
/// until a full round brings no improvement or `max_rounds` is reached.
SolveReport local_search(std::span<const TapKnobs> qconfig, const CancellerModel& model,
                         const ComplexResponse& h_si, const QuantizationSpec& spec, int max_rounds = 10);

struct WindowFit {
  std::size_t center_index = 0;
  double before = 0.0;  ///< residual power in the fit window before the tap
  double after = 0.0;   ///< ... and after subtracting it
};

struct HeuristicResult {
  SolveReport report;
  std::vector<WindowFit> windows;
};

/// M frequencies evenly spread over the grid span, one per tap.
std::vector<double> default_cancellation_frequencies(const FrequencyGrid& grid, std::size_t num_taps);

/// Per-tap greedy configuration. Tap i is fit to the current residual on the
/// grid point nearest `canc_freqs[i]` and its two neighbours, optionally
/// snapped to `quantization`, then subtracted from the residual.
HeuristicResult iterative_heuristic(const CancellerModel& model, const ComplexResponse& h_si,
                                    std::span<const double> canc_freqs, const Bounds& bounds,
                                    const std::optional<QuantizationSpec>& quantization,
                                    const SolveOptions& opts = {});

inline constexpr double kMaxLatticeSize = 1e7;

/// Exhaustive search over `points_per_knob` evenly spaced values of each
/// knob's quantization grid (1 or 2 taps). Throws LatticeTooLarge above 1e7
/// configurations.
SolveReport grid_search_oracle(const CancellerModel& model, const ComplexResponse& h_si, const QuantizationSpec& spec,
                               std::size_t points_per_knob, std::size_t num_taps);

/// Lattice values of one knob used by grid_search_oracle.
std::vector<double> lattice_values(const KnobQuantization& knob, std::size_t points);

}  // namespace fdecanc
