// SPDX-License-Identifier: Apache-2.0

#include "fdecanc/metrics.hpp"

#include <cmath>
#include <limits>

#include "fdecanc/io.hpp"

namespace fdecanc {

std::vector<double> isolation_db(const ComplexResponse& h) { return amplitude_db(h); }

SicSummary rf_sic_db(const ComplexResponse& h_res) {
  SicSummary s;
  const auto iso = isolation_db(h_res);
  s.per_point_db.reserve(iso.size());
  double sum = 0.0;
  double power = 0.0;
  for (std::size_t k = 0; k < iso.size(); ++k) {
    const double sic = 0.0 - iso[k];
    s.per_point_db.push_back(sic);
    power += std::norm(h_res[k]);
    if (std::isfinite(sic)) {
      sum += sic;
      ++s.finite_count;
    } else {
      ++s.sentinel_count;
    }
  }
  s.avg_db = s.finite_count ? sum / static_cast<double>(s.finite_count) : std::numeric_limits<double>::infinity();
  s.avg_power_db = -linear_to_db(std::sqrt(power / static_cast<double>(iso.size())));
  return s;
}

std::string format_metrics_csv(const ComplexResponse& h_res) {
  const auto iso = isolation_db(h_res);
  std::string out = "freq_hz,isolation_db,sic_db\n";
  for (std::size_t k = 0; k < iso.size(); ++k) {
    out += format_double(h_res.grid()[k]) + ',' + format_double(iso[k]) + ',' + format_double(0.0 - iso[k]) + '\n';
  }
  return out;
}

}  // namespace fdecanc
