#include "qpm/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace qpm {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

EffectiveField effective_field(double xi, double lambda, double gamma, double eta) {
  const double g = 2.0 * lambda * xi;
  const double sx = std::cos(eta) * std::sin(gamma);
  const double sy = std::sin(eta) * std::sin(gamma);
  const double cz = std::cos(gamma);

  EffectiveField f;
  f.w_plus = {g * sx, g * sy, 1.0 + g * cz};
  f.w_minus = {-g * sx, -g * sy, 1.0 - g * cz};
  f.chi_plus = f.w_plus.norm();
  f.chi_minus = f.w_minus.norm();
  f.theta_plus = std::atan2(std::hypot(f.w_plus.x, f.w_plus.y), f.w_plus.z);
  f.theta_minus = std::atan2(std::hypot(f.w_minus.x, f.w_minus.y), f.w_minus.z);
  f.phi_plus = std::atan2(f.w_plus.y, f.w_plus.x);
  f.phi_minus = std::atan2(f.w_minus.y, f.w_minus.x);
  return f;
}

std::pair<cplx, cplx> probe_amplitudes(const MeasurementConfig& cfg) {
  const auto [plus, minus] = axis_eigenstates(cfg.probe_axis);
  const State2 p = normalized(cfg.probe_init);
  return {inner(plus, p), inner(minus, p)};
}

namespace {

// One probe branch of the final state: the system qubit evolved under the
// effective field w (eigenphases exp(-+ i chi T / 2)).
State2 branch_system_state(const BlochVector& w, double theta, double T) {
  const double chi = w.norm();
  State2 phi0, phi1;
  if (chi > 1e-12) {
    std::tie(phi0, phi1) = axis_eigenstates(w);
  } else {
    // Degenerate branch (w = 0): no evolution, any basis works.
    phi0 = {1.0, 0.0};
    phi1 = {0.0, -1.0};
    theta = 0.0;
  }
  const cplx e0 = std::exp(cplx(0.0, -0.5 * chi * T));
  const cplx e1 = std::exp(cplx(0.0, +0.5 * chi * T));
  const double ch = std::cos(0.5 * theta), sh = std::sin(0.5 * theta);
  return {e0 * ch * phi0[0] + e1 * sh * phi1[0], e0 * ch * phi0[1] + e1 * sh * phi1[1]};
}

}  // namespace

State4 exact_final_state(const MeasurementConfig& cfg, cplx c_plus, cplx c_minus) {
  cfg.validate();
  if (std::abs(std::norm(c_plus) + std::norm(c_minus) - 1.0) > 1e-10)
    throw std::invalid_argument("exact_final_state: probe amplitudes must be normalized");
  const State2 s0 = normalized(cfg.system_init);
  if (std::abs(s0[1]) > 1e-9)
    throw std::invalid_argument("exact_final_state: closed form requires system initial state |0>");

  const double T = cfg.duration();
  const EffectiveField f = effective_field(cfg.xi, cfg.lambda, cfg.gamma, cfg.eta);
  const auto [np, nm] = axis_eigenstates(cfg.probe_axis);

  const State2 sp = branch_system_state(f.w_plus, f.theta_plus, T);
  const State2 sm = branch_system_state(f.w_minus, f.theta_minus, T);

  State4 psi{};
  const State4 bp = kron(sp, np);
  const State4 bm = kron(sm, nm);
  for (std::size_t i = 0; i < 4; ++i) psi[i] = c_plus * bp[i] + c_minus * bm[i];
  return normalized(psi);
}

double ideal_rotation_angle(double gamma, double lambda) { return 2.0 * lambda * std::cos(gamma); }

double ideal_pointer_value(double gamma) { return std::sin(0.5 * kPi * std::cos(gamma)); }

ComplexMatrix controlled_rotation_gate(double gamma) {
  const double a = 0.25 * kPi * std::cos(gamma);
  const double c = std::cos(a), s = std::sin(a);
  ComplexMatrix g(4);
  g(0, 0) = c;  g(0, 1) = -s;
  g(1, 0) = s;  g(1, 1) = c;
  g(2, 2) = c;  g(2, 3) = s;
  g(3, 2) = -s; g(3, 3) = c;
  return g;
}

}  // namespace qpm
