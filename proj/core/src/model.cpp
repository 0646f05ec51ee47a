#include "qpm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qpm {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_unit(const BlochVector& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

}  // namespace

BlochVector MeasurementConfig::measurement_axis() const {
  return {std::cos(eta) * std::sin(gamma), std::sin(eta) * std::sin(gamma), std::cos(gamma)};
}

BlochVector MeasurementConfig::readout_axis() const {
  const BlochVector n = probe_axis.normalized();
  const BlochVector p = bloch_vector(density(normalized(probe_init)));
  const BlochVector k = n.cross(p);
  if (k.norm() > 1e-6) return k.normalized();
  // Degenerate initialization along n: any direction perpendicular to n.
  const BlochVector seed = std::abs(n.x) < 0.9 ? BlochVector{1, 0, 0} : BlochVector{0, 1, 0};
  return n.cross(seed).normalized();
}

void MeasurementConfig::validate() const {
  if (!(xi > 0.0) || !std::isfinite(xi))
    throw std::invalid_argument("measurement.xi must be positive");
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw std::invalid_argument("measurement.lambda must be finite and non-negative");
  if (gamma < -1e-12 || gamma > kPi + 1e-12)
    throw std::invalid_argument("measurement.gamma must lie in [0, pi]");
  if (eta < -1e-12 || eta >= 2.0 * kPi + 1e-12)
    throw std::invalid_argument("measurement.eta must lie in [0, 2pi)");
  if (probe_axis.norm() < 1e-6)
    throw std::invalid_argument("measurement.probe_axis is a near-zero vector");
  if (norm(system_init) < 1e-12 || norm(probe_init) < 1e-12)
    throw std::invalid_argument("measurement initial states must be nonzero");
}

MeasurementConfig MeasurementConfig::from_axis(double xi, const BlochVector& m) {
  const BlochVector u = m.normalized();
  MeasurementConfig cfg;
  cfg.xi = xi;
  cfg.gamma = std::atan2(std::hypot(u.x, u.y), u.z);
  cfg.eta = std::atan2(u.y, u.x);
  if (cfg.eta < 0.0) cfg.eta += 2.0 * kPi;
  return cfg;
}

void ProbeSelfConfig::validate() const {
  if (!(delta_p >= 0.0) || !std::isfinite(delta_p))
    throw std::invalid_argument("probe_self.delta_p must be non-negative");
  if (axis.norm() < 1e-6) throw std::invalid_argument("probe_self.axis is a near-zero vector");
}

void EnvironmentConfig::validate() const {
  if (!(kappa_s >= 0.0) || !(kappa_p >= 0.0) || !std::isfinite(kappa_s) || !std::isfinite(kappa_p))
    throw std::invalid_argument("environment rates must be non-negative");
  if (system_axis.norm() < 1e-6)
    throw std::invalid_argument("environment.system_axis is a near-zero vector");
  if (probe_axis.norm() < 1e-6)
    throw std::invalid_argument("environment.probe_axis is a near-zero vector");
}

ComplexMatrix pauli_dot(const BlochVector& u) {
  if (!is_unit(u, 1e-9)) throw std::invalid_argument("pauli_dot: axis must be a unit vector");
  ComplexMatrix m(2);
  m(0, 0) = u.z;
  m(1, 1) = -u.z;
  m(0, 1) = cplx(u.x, -u.y);
  m(1, 0) = cplx(u.x, u.y);
  return m;
}

ComplexMatrix build_hamiltonian(const MeasurementConfig& cfg,
                                const std::optional<ProbeSelfConfig>& probe) {
  cfg.validate();
  const double T = cfg.duration();
  ComplexMatrix h = 0.5 * kron(sigma_z(), identity2());
  h += (cfg.lambda / T) * kron(pauli_dot(cfg.measurement_axis()),
                               pauli_dot(cfg.probe_axis.normalized()));
  if (probe && probe->delta_p > 0.0) {
    probe->validate();
    h += (kPi * probe->delta_p / (4.0 * T)) * kron(identity2(), pauli_dot(probe->axis.normalized()));
  }
  return h;
}

std::vector<LindbladOp> build_lindblad_ops(const EnvironmentConfig& env) {
  env.validate();
  return {{kron(pauli_dot(env.system_axis.normalized()), identity2()), env.kappa_s},
          {kron(identity2(), pauli_dot(env.probe_axis.normalized())), env.kappa_p}};
}

}  // namespace qpm
