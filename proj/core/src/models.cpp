// SPDX-License-Identifier: Apache-2.0

#include "fdecanc/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdecanc/error.hpp"
#include "model_kernels.hpp"

namespace fdecanc {

namespace {

constexpr Complex kJ{0.0, 1.0};

void require_phase(double phase_rad) {
  if (!(phase_rad >= -kPi && phase_rad <= kPi)) {
    throw InvalidArgument("tap phase " + std::to_string(phase_rad) + " rad outside [-pi, pi]");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive and finite");
}

double yq2_coefficient(ClosedFormVariant variant) {
  return variant == ClosedFormVariant::kAsPrinted ? 0.5 : 1.0;
}

void require_positive_grid(const FrequencyGrid& grid) {
  if (!(grid.front() > 0.0)) throw InvalidArgument("grid frequencies must be positive");
}

// 1/M_C for one tap at one frequency, via the selected evaluation route.
template <typename McFn>
ComplexResponse pcb_bpf_eval(const PcbTapConfig& cfg, const PcbBoardParams& params, const FrequencyGrid& grid,
                             McFn&& mc_of) {
  cfg.validate();
  params.validate();
  require_positive_grid(grid);
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double f = grid[k];
    const Complex mc = mc_of(f);
    if (mc == Complex{} || !std::isfinite(std::abs(mc))) {
      throw SingularNetwork("BPF cascade is singular (M_C = 0) at " + std::to_string(f) + " Hz", f);
    }
    out[k] = 1.0 / (params.r_s_ohm * mc);
  }
  return ComplexResponse(grid, std::move(out));
}

}  // namespace

void IdealTapConfig::validate() const {
  if (!std::isfinite(amp_db)) throw InvalidArgument("tap amplitude must be finite");
  require_phase(phase_rad);
  require_positive(center_hz, "center frequency");
  require_positive(q, "quality factor");
}

void PcbTapConfig::validate() const {
  if (!std::isfinite(amp_db)) throw InvalidArgument("tap amplitude must be finite");
  require_phase(phase_rad);
  require_positive(cf_pf, "C_F");
  require_positive(cq_pf, "C_Q");
}

PcbBoardParams PcbBoardParams::companion_fit() {
  PcbBoardParams p;
  p.l_f_nh = 1.85;
  p.l_q_nh = 3.28;
  return p;
}

void PcbBoardParams::validate() const {
  require_positive(l_f_nh, "L_F");
  require_positive(l_q_nh, "L_Q");
  require_positive(r_f_ohm, "R_F");
  require_positive(r_q_ohm, "R_Q");
  require_positive(r_s_ohm, "R_s");
  require_positive(z0_ohm, "Z0");
  if (!std::isfinite(beta_l_rad) || !std::isfinite(a0_db) || !std::isfinite(tau0_s)) {
    throw InvalidArgument("board parameters must be finite");
  }
}

bool TwoPortMatrix::finite() const noexcept {
  auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return ok(a) && ok(b) && ok(c) && ok(d);
}

ComplexResponse ideal_tap_response(const IdealTapConfig& cfg, const FrequencyGrid& grid) {
  cfg.validate();
  require_positive_grid(grid);
  const Complex gain = detail::tap_gain(cfg.amp_db, cfg.phase_rad);
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = detail::ideal_tap_value(gain, cfg.center_hz, cfg.q, grid[k]);
  return ComplexResponse(grid, std::move(out));
}

ComplexResponse multi_tap_response(std::span<const IdealTapConfig> cfgs, const FrequencyGrid& grid) {
  if (cfgs.empty()) throw InvalidArgument("canceller needs at least one tap");
  ComplexResponse sum(grid);
  for (const auto& cfg : cfgs) sum += ideal_tap_response(cfg, grid);
  return sum;
}

TwoPortMatrix tline_matrix(double beta_l_rad, double z0_ohm) {
  require_positive(z0_ohm, "Z0");
  const double c = std::cos(beta_l_rad);
  const double s = std::sin(beta_l_rad);
  return {Complex(c, 0.0), kJ * (z0_ohm * s), kJ * (s / z0_ohm), Complex(c, 0.0)};
}

TwoPortMatrix shunt_matrix(Complex y) noexcept { return {Complex(1.0, 0.0), Complex{}, y, Complex(1.0, 0.0)}; }

Complex shunt_admittance(double r_ohm, double l_h, double c_f, double f_hz) {
  if (!(f_hz > 0.0)) throw InvalidArgument("admittance frequency must be positive");
  require_positive(r_ohm, "R");
  require_positive(l_h, "L");
  require_positive(c_f, "C");
  return detail::rlc_admittance(r_ohm, l_h, c_f, f_hz);
}

TwoPortMatrix bpf_cascade(Complex y_f, Complex y_q, double beta_l_rad, double z0_ohm) {
  const TwoPortMatrix line = tline_matrix(beta_l_rad, z0_ohm);
  const TwoPortMatrix outer = shunt_matrix(y_q);
  return outer * line * shunt_matrix(y_f) * line * outer;
}

Complex bpf_mc_closed_form(Complex y_f, Complex y_q, double beta_l_rad, double z0_ohm, ClosedFormVariant variant) {
  return detail::bpf_mc(y_f, y_q, beta_l_rad, z0_ohm, yq2_coefficient(variant));
}

ComplexResponse pcb_bpf_response_abcd(const PcbTapConfig& cfg, const PcbBoardParams& params,
                                      const FrequencyGrid& grid) {
  const double l_f = params.l_f_nh * 1e-9;
  const double l_q = params.l_q_nh * 1e-9;
  return pcb_bpf_eval(cfg, params, grid, [&](double f) {
    const Complex y_f = shunt_admittance(params.r_f_ohm, l_f, cfg.cf_pf * 1e-12, f);
    const Complex y_q = shunt_admittance(params.r_q_ohm, l_q, cfg.cq_pf * 1e-12, f);
    return bpf_cascade(y_f, y_q, params.beta_l_rad, params.z0_ohm).c;
  });
}

ComplexResponse pcb_bpf_response_closed_form(const PcbTapConfig& cfg, const PcbBoardParams& params,
                                             const FrequencyGrid& grid, ClosedFormVariant variant) {
  const double coeff = yq2_coefficient(variant);
  return pcb_bpf_eval(cfg, params, grid,
                      [&](double f) { return detail::pcb_bpf_mc(cfg.cf_pf, cfg.cq_pf, params, f, coeff); });
}

double closed_form_discrepancy(const PcbTapConfig& cfg, const PcbBoardParams& params, const FrequencyGrid& grid,
                               ClosedFormVariant variant) {
  const auto ref = pcb_bpf_response_abcd(cfg, params, grid);
  const auto alt = pcb_bpf_response_closed_form(cfg, params, grid, variant);
  double worst = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) {
    worst = std::max(worst, std::abs(alt[k] - ref[k]) / std::abs(ref[k]));
  }
  return worst;
}

ComplexResponse pcb_canceller_response(std::span<const PcbTapConfig> cfgs, const PcbBoardParams& params,
                                       const FrequencyGrid& grid) {
  if (cfgs.empty()) throw InvalidArgument("canceller needs at least one tap");
  ComplexResponse sum(grid);
  for (const auto& cfg : cfgs) {
    sum += pcb_bpf_response_closed_form(cfg, params, grid) * detail::tap_gain(cfg.amp_db, cfg.phase_rad);
  }
  std::vector<Complex> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = detail::pcb_path_factor(params, grid[k]) * sum[k];
  return ComplexResponse(grid, std::move(out));
}

}  // namespace fdecanc
