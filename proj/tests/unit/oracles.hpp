// SPDX-License-Identifier: Apache-2.0
//
// Reference evaluations written straight from the defining formulas, kept
// independent of the library's own kernels.

#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;
using Mat = std::array<C, 4>;  // row-major a, b, c, d

inline constexpr double pi = 3.14159265358979323846;

inline Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

inline Mat shunt(C y) { return {C(1), C(0), y, C(1)}; }

inline Mat line(double bl, double z0) {
  const C j(0, 1);
  return {C(std::cos(bl)), j * z0 * std::sin(bl), j * std::sin(bl) / z0, C(std::cos(bl))};
}

inline C tank(double r, double l, double c, double f) {
  const double w = 2 * pi * f;
  return 1.0 / r + C(0, w * c) + 1.0 / C(0, w * l);
}

/// 1/(R_s * C-entry) of shunt(Y_Q) line shunt(Y_F) line shunt(Y_Q).
inline C bpf(double cf_pf, double cq_pf, double f, double lf_nh = 1.65, double lq_nh = 2.85, double rf = 50,
             double rq = 50, double rs = 50, double bl = 1.37, double z0 = 50) {
  const C yf = tank(rf, lf_nh * 1e-9, cf_pf * 1e-12, f);
  const C yq = tank(rq, lq_nh * 1e-9, cq_pf * 1e-12, f);
  const Mat m = mul(mul(mul(mul(shunt(yq), line(bl, z0)), shunt(yf)), line(bl, z0)), shunt(yq));
  return 1.0 / (rs * m[2]);
}

/// A e^{-j phi} / (1 - j Q (fc/f - f/fc)).
inline C ideal_tap(double amp_db, double phase, double fc, double q, double f) {
  const C num = std::pow(10.0, amp_db / 20.0) * std::exp(C(0, -phase));
  return num / C(1.0, -q * (fc / f - f / fc));
}

inline double rel_err(C got, C want) { return std::abs(got - want) / std::abs(want); }

}  // namespace oracle
