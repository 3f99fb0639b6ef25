// SPDX-License-Identifier: Apache-2.0
//
// Self-interference channel responses: CSV ingestion of measured antenna
// interface responses and a multipath synthesizer used when no measurement
// is available.
//
// File format (UTF-8): header `freq_hz,re,im`, then one row per grid point
// with strictly increasing frequency.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdecanc/core.hpp"

namespace fdecanc {

struct Reflection {
  double amp_db;   ///< relative to the direct leakage path, < 0
  double delay_s;  ///< extra delay on top of the base delay
};

struct SynthChannelSpec {
  double isolation_db = -20.0;
  double base_delay_s = 10e-9;
  std::vector<Reflection> reflections{{-10.0, 20e-9}, {-16.0, 45e-9}};
  std::uint64_t seed = 0;
  /// Draw each echo's carrier phase uniformly from `seed` instead of zero.
  bool randomize_phase = false;

  void validate() const;
};

/// How `load_si_channel` maps file rows onto a grid.
struct GridPolicy {
  /// When set, the file is linearly interpolated (re/im separately) onto this
  /// grid, which must lie inside the file's span. Otherwise the file rows must
  /// themselves form a uniform grid.
  std::optional<FrequencyGrid> resample_to;
};

ComplexResponse parse_si_channel(std::string_view text, const GridPolicy& policy = {});
ComplexResponse load_si_channel(const std::string& path, const GridPolicy& policy = {});

std::string format_si_channel(const ComplexResponse& h);
void save_si_channel(const std::string& path, const ComplexResponse& h);

/// H(f) = iso * e^{-j 2 pi f d0} * (1 + sum_p a_p e^{-j (2 pi f d_p + theta_p)}).
ComplexResponse synth_si_channel(const SynthChannelSpec& spec, const FrequencyGrid& grid);

}  // namespace fdecanc
