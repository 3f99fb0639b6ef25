// SPDX-License-Identifier: Apache-2.0
//
// Frequency grids, complex frequency responses and the dB / phase / group
// delay helpers shared by every other part of the library.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace fdecanc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Strictly increasing, uniformly spaced set of frequencies in Hz.
///
/// Uniform spacing is checked to a relative tolerance of 1e-9 of the mean
/// spacing; group-delay differentiation relies on it.
class FrequencyGrid {
 public:
  static constexpr double kSpacingTolerance = 1e-9;

  explicit FrequencyGrid(std::vector<double> points);

  /// `count` points from `start` to `stop` inclusive.
  static FrequencyGrid uniform(double start_hz, double stop_hz, std::size_t count);

  /// Parses `start:stop:count`, e.g. `850e6:950e6:101`.
  static FrequencyGrid parse(std::string_view text);

  /// Grid of `count` points spanning `bandwidth_hz` centred on `center_hz`.
  static FrequencyGrid centered(double center_hz, double bandwidth_hz, std::size_t count);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t k) const noexcept { return points_[k]; }
  std::span<const double> points() const noexcept { return points_; }
  double front() const noexcept { return points_.front(); }
  double back() const noexcept { return points_.back(); }
  double bandwidth() const noexcept { return back() - front(); }
  double spacing() const noexcept { return bandwidth() / static_cast<double>(size() - 1); }

  /// Index of the grid point nearest to `freq_hz` (lower index on ties).
  std::size_t nearest_index(double freq_hz) const noexcept;

  /// Sub-grid of points [first, first + count).
  FrequencyGrid slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  std::vector<double> points_;
};

/// One complex transfer-function value per grid point.
class ComplexResponse {
 public:
  ComplexResponse(FrequencyGrid grid, std::vector<Complex> values);

  /// All-zero response on `grid`.
  explicit ComplexResponse(FrequencyGrid grid);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Complex& operator[](std::size_t k) const noexcept { return values_[k]; }
  std::span<const Complex> values() const noexcept { return values_; }

  ComplexResponse& operator+=(const ComplexResponse& other);
  ComplexResponse& operator-=(const ComplexResponse& other);
  ComplexResponse& operator*=(Complex scale);

  friend ComplexResponse operator+(ComplexResponse a, const ComplexResponse& b) { return a += b; }
  friend ComplexResponse operator-(ComplexResponse a, const ComplexResponse& b) { return a -= b; }
  friend ComplexResponse operator*(ComplexResponse a, Complex s) { return a *= s; }
  friend ComplexResponse operator*(Complex s, ComplexResponse a) { return a *= s; }

  /// Pointwise product.
  ComplexResponse multiplied(const ComplexResponse& other) const;

 private:
  void require_same_grid(const ComplexResponse& other) const;

  FrequencyGrid grid_;
  std::vector<Complex> values_;
};

/// Amplitude-ratio convention: 10^(db/20).
double db_to_linear(double db);

/// 20*log10(ratio); a zero ratio maps to -infinity.
double linear_to_db(double ratio);

/// Per-point 20*log10|H|, with -infinity for exact zeros.
std::vector<double> amplitude_db(const ComplexResponse& r);

/// Phase in radians, continuous across the grid; the first value lies in
/// (-pi, pi] and adjacent differences lie in (-pi, pi].
std::vector<double> unwrapped_phase(const ComplexResponse& r);

/// Group delay -d(phase)/d(2*pi*f) in seconds. Interior points use central
/// differences, the two endpoints first-order one-sided differences.
std::vector<double> group_delay(const ComplexResponse& r);

}  // namespace fdecanc
