// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the fdecanc executable. Kept in a library
// so tests can drive the pipelines without spawning processes.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fdecanc/optimizer.hpp"
#include "fdecanc/sichannel.hpp"

namespace fdecanc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Parses argv and runs one command. Never throws.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// "start:stop:count" (count >= 1) or a single number.
std::vector<double> parse_range(const std::string& text);

struct FitRequest {
  ModelKind model = ModelKind::kIdeal;
  std::size_t taps = 2;
  SolveOptions solve{};
  std::optional<Preset> quantize;
  int local_rounds = 10;
};

struct FitResult {
  SolveReport continuous;
  SolveReport final;  ///< quantized and refined when requested, else the continuous report
  ComplexResponse residual;
};

/// solve_continuous, then (optionally) quantize_config and local_search.
FitResult run_fit(const FitRequest& req, const ComplexResponse& h_si);

struct SweepRequest {
  ModelKind model = ModelKind::kIdeal;
  std::vector<std::size_t> taps{1, 2, 3, 4};
  std::vector<double> bandwidths_hz{20e6, 40e6, 80e6};
  double center_hz = 900e6;
  std::size_t points = 101;
  SolveOptions solve{};
  SynthChannelSpec channel{};
};

struct SweepCell {
  std::size_t taps = 0;
  double bandwidth_hz = 0.0;
  bool quantized = false;
  double avg_sic_db = 0.0;
  double avg_power_db = 0.0;
  double objective = 0.0;
};

/// For every (bandwidth, M): a continuous solve on the synthetic channel and
/// the same configuration rounded to the model's quantization preset.
std::vector<SweepCell> run_sweep(const SweepRequest& req);

/// CSV `taps,bandwidth_hz,mode,avg_sic_db,avg_power_db,objective`.
std::string format_sweep_csv(std::span<const SweepCell> cells);

}  // namespace fdecanc::cli
