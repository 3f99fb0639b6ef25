// SPDX-License-Identifier: Apache-2.0
//
// TX/RX isolation and RF SIC figures derived from responses and residuals.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fdecanc/core.hpp"

namespace fdecanc {

/// Per-point 20*log10|h| in dB (usually negative); exact zeros give -inf.
std::vector<double> isolation_db(const ComplexResponse& h);

struct SicSummary {
  std::vector<double> per_point_db;  ///< -isolation; +inf where the residual is exactly zero
  double avg_db = 0.0;               ///< arithmetic mean of the finite per-point values
  double avg_power_db = 0.0;         ///< -10*log10(mean |h_res|^2), the linear-power reading
  std::size_t finite_count = 0;
  std::size_t sentinel_count = 0;    ///< points excluded from avg_db
};

/// RF SIC of a residual response. If every point is a perfect null,
/// avg_db is +inf.
SicSummary rf_sic_db(const ComplexResponse& h_res);

/// CSV `freq_hz,isolation_db,sic_db` of a residual response.
std::string format_metrics_csv(const ComplexResponse& h_res);

}  // namespace fdecanc
