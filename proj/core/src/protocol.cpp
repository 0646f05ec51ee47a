#include "qpm/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpm {

double disturbance(const TrajectoryRecord& traj) {
  if (traj.times.empty()) throw std::invalid_argument("disturbance: empty trajectory");
  double min_sz = traj.system_bloch.front().z;
  for (const BlochVector& b : traj.system_bloch) min_sz = std::min(min_sz, b.z);
  return 1.0 - min_sz;
}

double pointer_deviation(double actual, double ideal) {
  const double diff = std::abs(actual - ideal);
  return std::abs(ideal) > 0.05 ? diff / std::abs(ideal) : diff;
}

namespace {

TrajectoryRecord evolve_interval(const JointState& initial, const ComplexMatrix& h,
                                 const std::optional<EnvironmentConfig>& env, double T,
                                 const BlochVector& readout, const RunOptions& opts) {
  if (env) {
    return lindblad_evolve(initial, h, build_lindblad_ops(*env), T, opts.dt, opts.samples, readout);
  }
  return unitary_evolve(h, initial, time_grid(T, opts.samples), readout);
}

MeasurementReport report_from(TrajectoryRecord traj, double gamma) {
  MeasurementReport r;
  r.disturbance = disturbance(traj);
  r.final_system_purity = traj.system_purity.back();
  r.final_probe_purity = traj.probe_purity.back();
  r.final_pointer = traj.probe_pointer.back();
  r.ideal_pointer = ideal_pointer_value(gamma);
  r.pointer_deviation = pointer_deviation(r.final_pointer, r.ideal_pointer);
  r.trajectory = std::move(traj);
  return r;
}

}  // namespace

MeasurementReport run_single(const MeasurementConfig& cfg, const std::optional<ProbeSelfConfig>& probe,
                             const std::optional<EnvironmentConfig>& env, const RunOptions& opts) {
  cfg.validate();
  const ComplexMatrix h = build_hamiltonian(cfg, probe);
  const JointState initial =
      JointState::pure(kron(normalized(cfg.system_init), normalized(cfg.probe_init)));
  TrajectoryRecord traj =
      evolve_interval(initial, h, env, cfg.duration(), cfg.readout_axis(), opts);
  return report_from(std::move(traj), cfg.gamma);
}

ChainReport run_repeated(const MeasurementConfig& cfg, int n_cycles,
                         const std::optional<ProbeSelfConfig>& probe,
                         const std::optional<EnvironmentConfig>& env, const RunOptions& opts) {
  cfg.validate();
  if (n_cycles < 1) throw std::invalid_argument("run_repeated: need at least one cycle");

  const ComplexMatrix h = build_hamiltonian(cfg, probe);
  const BlochVector readout = cfg.readout_axis();
  const ComplexMatrix probe_reset = density(normalized(cfg.probe_init));
  const double T = cfg.duration();

  ChainReport chain;
  chain.per_cycle.reserve(static_cast<std::size_t>(n_cycles));
  JointState state = JointState::pure(kron(normalized(cfg.system_init), normalized(cfg.probe_init)));

  double min_sz = 1.0;
  double dev_sum = 0.0;
  for (int cycle = 0; cycle < n_cycles; ++cycle) {
    TrajectoryRecord traj = evolve_interval(state, h, env, T, readout, opts);
    // Re-prepare the probe for the next cycle; correlations with the measured
    // probe are discarded.
    state = JointState::product(partial_trace(traj.final_state(), Subsystem::System), probe_reset);

    MeasurementReport r = report_from(std::move(traj), cfg.gamma);
    for (const BlochVector& b : r.trajectory.system_bloch) min_sz = std::min(min_sz, b.z);
    dev_sum += r.pointer_deviation;
    chain.per_cycle.push_back(std::move(r));
  }

  chain.cumulative_disturbance = 1.0 - min_sz;
  chain.worst_case_deviation = chain.per_cycle.back().pointer_deviation;
  chain.average_deviation = dev_sum / static_cast<double>(n_cycles);
  return chain;
}

ComplexMatrix apply_counter_rotation(const ComplexMatrix& probe_state, const ProbeSelfConfig& probe,
                                     double T) {
  probe.validate();
  if (probe_state.dim() != 2)
    throw std::invalid_argument("apply_counter_rotation: expected a 2x2 probe state");
  if (probe.delta_p == 0.0) return probe_state;
  (void)T;  // the rotation angle omega_P * T = (pi/2) delta_p is T-independent
  const double half_angle = 0.25 * std::numbers::pi * probe.delta_p;
  // exp(+i a sigma.r) = cos(a) I + i sin(a) sigma.r
  ComplexMatrix c = std::cos(half_angle) * identity2();
  c += cplx(0.0, std::sin(half_angle)) * pauli_dot(probe.axis.normalized());
  return c * probe_state * c.adjoint();
}

}  // namespace qpm
