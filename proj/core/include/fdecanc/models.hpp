// SPDX-License-Identifier: Apache-2.0
//
// Transfer-function models of FDE canceller taps.
//
// Two tap families are provided:
//  * the ideal 2nd-order bandpass tap used to model an RFIC N-path canceller,
//    configured directly by amplitude, phase, center frequency and Q;
//  * the discrete-component PCB tap, a shunt-RLC / transmission-line cascade
//    whose center frequency and Q are set indirectly through two capacitors.
//
// All amplitudes are carried in dB and converted with the amplitude-ratio
// convention (10^(dB/20)). Phase controls rotate by e^{-j*phase}.

#pragma once

#include <span>

#include "fdecanc/core.hpp"

namespace fdecanc {

struct IdealTapConfig {
  double amp_db = 0.0;
  double phase_rad = 0.0;
  double center_hz = 900e6;
  double q = 10.0;

  /// Throws InvalidArgument unless q > 0, center_hz > 0, phase in [-pi, pi].
  void validate() const;
};

struct PcbTapConfig {
  double amp_db = 0.0;
  double phase_rad = 0.0;
  double cf_pf = 1.5;  ///< center-frequency tank capacitance C_F
  double cq_pf = 8.0;  ///< impedance-transformation capacitance C_Q

  void validate() const;
};

/// Fixed circuit constants of the PCB canceller board.
struct PcbBoardParams {
  double l_f_nh = 1.65;
  double l_q_nh = 2.85;
  double r_f_ohm = 50.0;  ///< tank loss; not published, 50 ohm is an assumption
  double r_q_ohm = 50.0;
  double r_s_ohm = 50.0;
  double beta_l_rad = 1.37;
  double z0_ohm = 50.0;
  double a0_db = -4.1;    ///< constant attenuation of couplers/dividers
  double tau0_s = 4.2e-9; ///< constant group delay of couplers/dividers

  /// Inductances from the earlier curve fit of the BPF test structure
  /// (L_F = 1.85 nH, L_Q = 3.28 nH); everything else at defaults.
  static PcbBoardParams companion_fit();

  void validate() const;
};

/// 2x2 ABCD transmission matrix.
struct TwoPortMatrix {
  Complex a{1.0, 0.0};
  Complex b{};
  Complex c{};
  Complex d{1.0, 0.0};

  Complex determinant() const noexcept { return a * d - b * c; }
  bool finite() const noexcept;

  friend TwoPortMatrix operator*(const TwoPortMatrix& l, const TwoPortMatrix& r) noexcept {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

/// H(f) = A e^{-j phi} / (1 - j Q (fc/f - f/fc)).
ComplexResponse ideal_tap_response(const IdealTapConfig& cfg, const FrequencyGrid& grid);

/// Pointwise sum of the ideal tap responses.
ComplexResponse multi_tap_response(std::span<const IdealTapConfig> cfgs, const FrequencyGrid& grid);

/// Lossless line of electrical length beta*l: [cos, jZ0 sin; j sin/Z0, cos].
TwoPortMatrix tline_matrix(double beta_l_rad, double z0_ohm);

/// Shunt element of admittance y: [1, 0; y, 1].
TwoPortMatrix shunt_matrix(Complex y) noexcept;

/// Parallel RLC admittance 1/R + j 2 pi f C + 1/(j 2 pi f L), in siemens.
Complex shunt_admittance(double r_ohm, double l_h, double c_f, double f_hz);

/// Full BPF cascade shunt(Y_Q) * TL * shunt(Y_F) * TL * shunt(Y_Q).
TwoPortMatrix bpf_cascade(Complex y_f, Complex y_q, double beta_l_rad, double z0_ohm);

/// Which algebraic expansion of M_C to use for the closed-form BPF.
enum class ClosedFormVariant {
  /// Expansion that matches the cascade: the Y_Q^2 term is j sin(2bl) Z0 Y_Q^2.
  kCascadeConsistent,
  /// Expression as printed in the published model, with 0.5 j sin(2bl) Z0 Y_Q^2.
  kAsPrinted,
};

/// M_C entry of the BPF cascade, expanded in closed form.
Complex bpf_mc_closed_form(Complex y_f, Complex y_q, double beta_l_rad, double z0_ohm,
                           ClosedFormVariant variant = ClosedFormVariant::kCascadeConsistent);

/// PCB BPF response 1/(R_s M_C) with M_C from the explicit matrix product.
/// Throws SingularNetwork when M_C vanishes.
ComplexResponse pcb_bpf_response_abcd(const PcbTapConfig& cfg, const PcbBoardParams& params,
                                      const FrequencyGrid& grid);

/// PCB BPF response with M_C from the closed-form expansion.
ComplexResponse pcb_bpf_response_closed_form(
    const PcbTapConfig& cfg, const PcbBoardParams& params, const FrequencyGrid& grid,
    ClosedFormVariant variant = ClosedFormVariant::kCascadeConsistent);

/// Largest pointwise relative difference |H_closed - H_abcd| / |H_abcd|.
double closed_form_discrepancy(const PcbTapConfig& cfg, const PcbBoardParams& params,
                               const FrequencyGrid& grid, ClosedFormVariant variant);

/// Calibrated PCB canceller:
/// A0 e^{-j 2 pi f tau0} * sum_i A_i e^{-j phi_i} H_i^BPF(f).
ComplexResponse pcb_canceller_response(std::span<const PcbTapConfig> cfgs, const PcbBoardParams& params,
                                       const FrequencyGrid& grid);

}  // namespace fdecanc
