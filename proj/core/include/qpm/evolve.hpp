#pragma once

// Time evolution engines: exact unitary propagation via eigendecomposition,
// and a fixed-step RK4 integrator for the Lindblad master equation
//   d(rho)/dt = -i [H, rho] - (1/2) sum_k kappa_k [L_k, [L_k, rho]].

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qpm/linalg.hpp"
#include "qpm/model.hpp"

namespace qpm {

/// Joint system (x) probe state as a 4x4 density matrix; pure states are
/// stored as rank-1 densities.
struct JointState {
  ComplexMatrix rho{4};

  static JointState pure(const State4& psi);
  static JointState product(const ComplexMatrix& rho_system, const ComplexMatrix& rho_probe);

  /// Enforce the state invariants: unit trace within 1e-7, Hermitian within
  /// 1e-9, minimum eigenvalue >= -1e-7. Throws std::invalid_argument.
  void validate() const;
};

/// Time-sampled Bloch vectors, purities and pointer values for both qubits,
/// together with the sampled joint states and the state at the final time.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<BlochVector> system_bloch;
  std::vector<BlochVector> probe_bloch;
  std::vector<double> system_purity;
  std::vector<double> probe_purity;
  std::vector<double> probe_pointer;   // <sigma . k> along the readout axis
  std::vector<ComplexMatrix> states;   // joint state at each sample
  double hermiticity_defect = 0.0;     // max symmetrization correction (RK4 path)

  std::size_t size() const { return times.size(); }
  const ComplexMatrix& final_state() const { return states.back(); }
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform sample grid over [0, T] with `samples` >= 2 points.
std::vector<double> time_grid(double T, std::size_t samples);

TrajectoryRecord unitary_evolve(const ComplexMatrix& h, const State4& psi0,
                                const std::vector<double>& t_grid,
                                const BlochVector& readout_axis = {1.0, 0.0, 0.0});

TrajectoryRecord unitary_evolve(const ComplexMatrix& h, const JointState& rho0,
                                const std::vector<double>& t_grid,
                                const BlochVector& readout_axis = {1.0, 0.0, 0.0});

/// Right-hand side of the master equation (double-commutator dissipator).
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                           const std::vector<LindbladOp>& ops);

/// Classical RK4 with uniform steps of (at most) dt; dt <= 0 selects the
/// default T/20000. The state is re-symmetrized after each step and the
/// correction logged. Throws IntegrationError when the trace drifts beyond
/// 1e-5 or the iteration diverges.
TrajectoryRecord lindblad_evolve(const JointState& rho0, const ComplexMatrix& h,
                                 const std::vector<LindbladOp>& ops, double T, double dt = 0.0,
                                 std::size_t samples = 1000,
                                 const BlochVector& readout_axis = {1.0, 0.0, 0.0});

}  // namespace qpm
