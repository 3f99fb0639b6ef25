// SPDX-License-Identifier: Apache-2.0

#include "fdecanc/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "fdecanc/error.hpp"

namespace fdecanc {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse " + std::string(what) + " '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("trailing characters in " + std::string(what) + " '" + s + "'");
  return value;
}

// Wraps into (-pi, pi].
double wrap_half_open(double phase) {
  return phase <= -kPi ? phase + 2.0 * kPi : phase;
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InsufficientGrid("frequency grid needs at least 2 points");
  for (double f : points_) {
    if (!std::isfinite(f)) throw InvalidArgument("frequency grid contains a non-finite value");
  }
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (!(points_[k] > points_[k - 1])) throw InvalidArgument("frequency grid must be strictly increasing");
  }
  const double mean = spacing();
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (std::abs((points_[k] - points_[k - 1]) - mean) > kSpacingTolerance * mean) {
      throw InvalidArgument("frequency grid must be uniformly spaced");
    }
  }
}

FrequencyGrid FrequencyGrid::uniform(double start_hz, double stop_hz, std::size_t count) {
  if (count < 2) throw InsufficientGrid("frequency grid needs at least 2 points");
  if (!(stop_hz > start_hz)) throw InvalidArgument("grid stop must exceed start");
  std::vector<double> pts(count);
  const double step = (stop_hz - start_hz) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) pts[k] = start_hz + step * static_cast<double>(k);
  pts.back() = stop_hz;
  return FrequencyGrid(std::move(pts));
}

FrequencyGrid FrequencyGrid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
      text.find(':', c2 + 1) != std::string_view::npos) {
    throw InvalidArgument("grid must be start:stop:count, got '" + std::string(text) + "'");
  }
  const double start = parse_double(text.substr(0, c1), "grid start");
  const double stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid stop");
  const double count = parse_double(text.substr(c2 + 1), "grid count");
  if (count < 2 || count != std::floor(count)) throw InvalidArgument("grid count must be an integer >= 2");
  return uniform(start, stop, static_cast<std::size_t>(count));
}

FrequencyGrid FrequencyGrid::centered(double center_hz, double bandwidth_hz, std::size_t count) {
  return uniform(center_hz - 0.5 * bandwidth_hz, center_hz + 0.5 * bandwidth_hz, count);
}

std::size_t FrequencyGrid::nearest_index(double freq_hz) const noexcept {
  auto it = std::lower_bound(points_.begin(), points_.end(), freq_hz);
  if (it == points_.begin()) return 0;
  if (it == points_.end()) return points_.size() - 1;
  const auto hi = static_cast<std::size_t>(it - points_.begin());
  return (freq_hz - points_[hi - 1] <= points_[hi] - freq_hz) ? hi - 1 : hi;
}

FrequencyGrid FrequencyGrid::slice(std::size_t first, std::size_t count) const {
  if (first + count > points_.size()) throw InvalidArgument("grid slice out of range");
  return FrequencyGrid(std::vector<double>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                           points_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

ComplexResponse::ComplexResponse(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("response has " + std::to_string(values_.size()) + " values for a " +
                          std::to_string(grid_.size()) + "-point grid");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("response contains a non-finite value");
    }
  }
}

ComplexResponse::ComplexResponse(FrequencyGrid grid)
    : grid_(std::move(grid)), values_(grid_.size(), Complex{}) {}

void ComplexResponse::require_same_grid(const ComplexResponse& other) const {
  if (!(grid_ == other.grid_)) throw InvalidArgument("responses are defined on different grids");
}

ComplexResponse& ComplexResponse::operator+=(const ComplexResponse& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ComplexResponse& ComplexResponse::operator-=(const ComplexResponse& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ComplexResponse& ComplexResponse::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

ComplexResponse ComplexResponse::multiplied(const ComplexResponse& other) const {
  require_same_grid(other);
  std::vector<Complex> out(values_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = values_[k] * other.values_[k];
  return ComplexResponse(grid_, std::move(out));
}

double db_to_linear(double db) {
  if (!std::isfinite(db)) throw InvalidArgument("decibel value must be finite");
  return std::pow(10.0, db / 20.0);
}

double linear_to_db(double ratio) {
  if (ratio < 0.0 || std::isnan(ratio)) throw InvalidArgument("amplitude ratio must be non-negative");
  if (ratio == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(ratio);
}

std::vector<double> amplitude_db(const ComplexResponse& r) {
  std::vector<double> out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) out[k] = linear_to_db(std::abs(r[k]));
  return out;
}

std::vector<double> unwrapped_phase(const ComplexResponse& r) {
  std::vector<double> out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == Complex{}) {
      throw DegenerateResponse("zero response value at " + std::to_string(r.grid()[k]) + " Hz has no phase");
    }
  }
  out[0] = wrap_half_open(std::arg(r[0]));
  for (std::size_t k = 1; k < r.size(); ++k) {
    out[k] = out[k - 1] + wrap_half_open(std::arg(r[k] * std::conj(r[k - 1])));
  }
  return out;
}

std::vector<double> group_delay(const ComplexResponse& r) {
  const std::size_t n = r.size();
  if (n < 3) throw InsufficientGrid("group delay needs at least 3 grid points");
  const auto phase = unwrapped_phase(r);
  const auto& f = r.grid();
  std::vector<double> out(n);
  const double scale = -1.0 / (2.0 * kPi);
  out[0] = scale * (phase[1] - phase[0]) / (f[1] - f[0]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    out[k] = scale * (phase[k + 1] - phase[k - 1]) / (f[k + 1] - f[k - 1]);
  }
  out[n - 1] = scale * (phase[n - 1] - phase[n - 2]) / (f[n - 1] - f[n - 2]);
  return out;
}

}  // namespace fdecanc
