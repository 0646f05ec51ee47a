#include "qpm/evolve.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace qpm {

JointState JointState::pure(const State4& psi) { return {density(normalized(psi))}; }

JointState JointState::product(const ComplexMatrix& rho_system, const ComplexMatrix& rho_probe) {
  return {kron(rho_system, rho_probe)};
}

void JointState::validate() const {
  if (std::abs(rho.trace().real() - 1.0) > 1e-7 || std::abs(rho.trace().imag()) > 1e-7)
    throw std::invalid_argument("JointState: trace deviates from 1 beyond 1e-7");
  if (rho.hermiticity_defect() > 1e-9)
    throw std::invalid_argument("JointState: not Hermitian within 1e-9");
  const Eigensystem es = hermitian_eigensystem(0.5 * (rho + rho.adjoint()));
  if (es.values.front() < -1e-7)
    throw std::invalid_argument("JointState: negative eigenvalue beyond -1e-7");
}

std::vector<double> time_grid(double T, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("time_grid: need at least 2 samples");
  if (!(T > 0.0)) throw std::invalid_argument("time_grid: T must be positive");
  std::vector<double> g(samples);
  for (std::size_t i = 0; i < samples; ++i)
    g[i] = T * static_cast<double>(i) / static_cast<double>(samples - 1);
  return g;
}

namespace {

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("unitary_evolve: empty time grid");
  if (t_grid.front() < 0.0) throw std::invalid_argument("unitary_evolve: negative time");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("unitary_evolve: time grid must be strictly increasing");
}

void record_sample(TrajectoryRecord& out, double t, const ComplexMatrix& rho,
                   const BlochVector& readout) {
  const ComplexMatrix rho_s = partial_trace(rho, Subsystem::System);
  const ComplexMatrix rho_p = partial_trace(rho, Subsystem::Probe);
  const BlochVector bp = bloch_vector(rho_p);
  out.times.push_back(t);
  out.system_bloch.push_back(bloch_vector(rho_s));
  out.probe_bloch.push_back(bp);
  out.system_purity.push_back(purity(rho_s));
  out.probe_purity.push_back(purity(rho_p));
  out.probe_pointer.push_back(bp.dot(readout));
  out.states.push_back(rho);
}

}  // namespace

TrajectoryRecord unitary_evolve(const ComplexMatrix& h, const State4& psi0,
                                const std::vector<double>& t_grid, const BlochVector& readout_axis) {
  check_grid(t_grid);
  const BlochVector k = readout_axis.normalized();
  const Eigensystem es = hermitian_eigensystem(h);
  const State4 psin = normalized(psi0);

  // Eigenbasis coefficients of the initial state; each sample is then a
  // phase rotation and one change of basis.
  State4 c{};
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t i = 0; i < 4; ++i) c[m] += std::conj(es.vectors(i, m)) * psin[i];

  TrajectoryRecord out;
  for (double t : t_grid) {
    State4 psi{};
    for (std::size_t m = 0; m < 4; ++m) {
      const cplx cm = c[m] * std::exp(cplx(0.0, -es.values[m] * t));
      for (std::size_t i = 0; i < 4; ++i) psi[i] += es.vectors(i, m) * cm;
    }
    record_sample(out, t, density(psi), k);
  }
  return out;
}

TrajectoryRecord unitary_evolve(const ComplexMatrix& h, const JointState& rho0,
                                const std::vector<double>& t_grid, const BlochVector& readout_axis) {
  check_grid(t_grid);
  const BlochVector k = readout_axis.normalized();
  const Eigensystem es = hermitian_eigensystem(h);

  TrajectoryRecord out;
  for (double t : t_grid) {
    ComplexMatrix u(4);
    for (std::size_t m = 0; m < 4; ++m) {
      const cplx phase = std::exp(cplx(0.0, -es.values[m] * t));
      for (std::size_t i = 0; i < 4; ++i) {
        const cplx vim = es.vectors(i, m) * phase;
        for (std::size_t j = 0; j < 4; ++j) u(i, j) += vim * std::conj(es.vectors(j, m));
      }
    }
    record_sample(out, t, u * rho0.rho * u.adjoint(), k);
  }
  return out;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                           const std::vector<LindbladOp>& ops) {
  ComplexMatrix d = cplx(0.0, -1.0) * commutator(h, rho);
  for (const LindbladOp& l : ops) {
    if (l.rate == 0.0) continue;
    d -= (0.5 * l.rate) * commutator(l.op, commutator(l.op, rho));
  }
  return d;
}

TrajectoryRecord lindblad_evolve(const JointState& rho0, const ComplexMatrix& h,
                                 const std::vector<LindbladOp>& ops, double T, double dt,
                                 std::size_t samples, const BlochVector& readout_axis) {
  if (!(T > 0.0)) throw std::invalid_argument("lindblad_evolve: T must be positive");
  if (samples < 2) throw std::invalid_argument("lindblad_evolve: need at least 2 samples");
  if (dt <= 0.0) dt = T / 20000.0;
  if (dt > T) dt = T;

  const std::size_t nsteps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  const double step = T / static_cast<double>(nsteps);
  const std::size_t nsamp = std::min<std::size_t>(samples, nsteps + 1);
  const BlochVector k = readout_axis.normalized();

  TrajectoryRecord out;
  ComplexMatrix rho = rho0.rho;
  record_sample(out, 0.0, rho, k);

  std::size_t next_sample = 1;
  for (std::size_t i = 1; i <= nsteps; ++i) {
    const ComplexMatrix k1 = lindblad_rhs(rho, h, ops);
    const ComplexMatrix k2 = lindblad_rhs(rho + (0.5 * step) * k1, h, ops);
    const ComplexMatrix k3 = lindblad_rhs(rho + (0.5 * step) * k2, h, ops);
    const ComplexMatrix k4 = lindblad_rhs(rho + step * k3, h, ops);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    out.hermiticity_defect = std::max(out.hermiticity_defect, rho.hermiticity_defect());
    rho = 0.5 * (rho + rho.adjoint());

    const double tr = rho.trace().real();
    const double fn = rho.frobenius_norm();
    // A density matrix has Frobenius norm <= 1; well beyond that the step
    // size is unstable even if the (exactly conserved) trace looks fine.
    if (!std::isfinite(fn) || fn > 10.0 || std::abs(tr - 1.0) > 1e-5) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "lindblad_evolve: integration failed at t=%.6g (dt=%.3g, trace drift=%.3g, "
                    "norm=%.3g); reduce the step size",
                    static_cast<double>(i) * step, step, tr - 1.0, fn);
      throw IntegrationError(msg);
    }

    // Sample when the step index crosses the next uniform sample position.
    while (next_sample < nsamp && i >= (next_sample * nsteps) / (nsamp - 1)) {
      record_sample(out, static_cast<double>(i) * step, rho, k);
      ++next_sample;
    }
  }
  return out;
}

}  // namespace qpm
