// SPDX-License-Identifier: Apache-2.0
//
// Per-frequency evaluation kernels shared by the public model functions and
// the optimizer's inner loop, so both produce bit-identical values.

#pragma once

#include <cmath>

#include "fdecanc/core.hpp"
#include "fdecanc/models.hpp"

namespace fdecanc::detail {

inline Complex tap_gain(double amp_db, double phase_rad) {
  return std::polar(std::pow(10.0, amp_db / 20.0), -phase_rad);
}

inline Complex ideal_tap_value(Complex gain, double center_hz, double q, double f_hz) {
  const double detune = center_hz / f_hz - f_hz / center_hz;
  return gain / Complex(1.0, -q * detune);
}

inline Complex rlc_admittance(double r_ohm, double l_h, double c_f, double f_hz) {
  const double w = 2.0 * kPi * f_hz;
  return Complex(1.0 / r_ohm, w * c_f - 1.0 / (w * l_h));
}

inline Complex bpf_mc(Complex y_f, Complex y_q, double beta_l_rad, double z0_ohm, double yq2_coeff) {
  constexpr Complex j{0.0, 1.0};
  const double s2 = std::sin(2.0 * beta_l_rad);
  const double c2 = std::cos(2.0 * beta_l_rad);
  const double cos_bl = std::cos(beta_l_rad);
  const double sin_bl = std::sin(beta_l_rad);
  const Complex y_q2 = y_q * y_q;
  return j * s2 * z0_ohm * y_f * y_q          //
         + cos_bl * cos_bl * y_f              //
         + 2.0 * c2 * y_q                     //
         + j * s2 / z0_ohm                    //
         + yq2_coeff * j * s2 * z0_ohm * y_q2 //
         - sin_bl * sin_bl * z0_ohm * z0_ohm * y_f * y_q2;
}

/// M_C of the BPF for given capacitances, cascade-consistent expansion.
inline Complex pcb_bpf_mc(double cf_pf, double cq_pf, const PcbBoardParams& p, double f_hz,
                          double yq2_coeff = 1.0) {
  const Complex y_f = rlc_admittance(p.r_f_ohm, p.l_f_nh * 1e-9, cf_pf * 1e-12, f_hz);
  const Complex y_q = rlc_admittance(p.r_q_ohm, p.l_q_nh * 1e-9, cq_pf * 1e-12, f_hz);
  return bpf_mc(y_f, y_q, p.beta_l_rad, p.z0_ohm, yq2_coeff);
}

/// Constant attenuation and delay of the PCB signal path at f.
inline Complex pcb_path_factor(const PcbBoardParams& p, double f_hz) {
  return std::polar(std::pow(10.0, p.a0_db / 20.0), -2.0 * kPi * f_hz * p.tau0_s);
}

}  // namespace fdecanc::detail
