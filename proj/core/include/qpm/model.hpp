#pragma once

// Configuration types and Hamiltonian builders. The working frame puts the
// protection axis along z: H = (1/2) sz (x) I + (lambda/T) (sigma.m) (x) (sigma.n)
// with T = 1/xi, plus an optional probe self-term (pi delta_p / 4T) I (x) (sigma.r).

#include <numbers>
#include <optional>
#include <vector>

#include "qpm/linalg.hpp"

namespace qpm {

/// One protective measurement: strength, coupling constant, measured axis
/// (polar gamma / azimuth eta), probe rotation axis and initial states.
/// The interaction duration is derived, never stored: T = 1/xi.
struct MeasurementConfig {
  double xi = 0.0;
  double lambda = std::numbers::pi / 4;
  double gamma = 0.0;
  double eta = 0.0;
  BlochVector probe_axis{0.0, 1.0, 0.0};
  State2 system_init{cplx(1.0), cplx(0.0)};
  State2 probe_init{cplx(1.0), cplx(0.0)};

  double duration() const { return 1.0 / xi; }
  BlochVector measurement_axis() const;

  /// Pointer readout axis k = n x p for probe Bloch direction p. Falls back
  /// to a fixed axis perpendicular to n when p is (anti)parallel to n.
  BlochVector readout_axis() const;

  void validate() const;  // throws std::invalid_argument

  /// Build a config measuring sigma.m for an arbitrary (unnormalized) axis m.
  static MeasurementConfig from_axis(double xi, const BlochVector& m);
};

/// Intrinsic probe dynamics H_P with strength delta_p relative to the
/// interaction term: omega_P = (pi/2T) delta_p, rotation about `axis`.
struct ProbeSelfConfig {
  double delta_p = 0.0;
  BlochVector axis{0.0, 1.0, 0.0};

  void validate() const;
};

/// Environment coupling: dephasing-type Lindblad operators along fixed axes,
/// rates in units of omega0.
struct EnvironmentConfig {
  double kappa_s = 0.0;
  double kappa_p = 0.0;
  BlochVector system_axis{1.0, 0.0, 0.0};
  BlochVector probe_axis{1.0, 0.0, 0.0};

  void validate() const;
};

/// sigma . u for a unit vector u. Hermitian, traceless, eigenvalues +-1.
ComplexMatrix pauli_dot(const BlochVector& u);

ComplexMatrix build_hamiltonian(const MeasurementConfig& cfg,
                                const std::optional<ProbeSelfConfig>& probe = {});

struct LindbladOp {
  ComplexMatrix op;
  double rate = 0.0;
};

/// [(sigma.e_S (x) I, kappa_s), (I (x) sigma.e_P, kappa_p)]
std::vector<LindbladOp> build_lindblad_ops(const EnvironmentConfig& env);

}  // namespace qpm
