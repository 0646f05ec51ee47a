#pragma once

// Closed-form solutions: the effective fields seen by the system conditioned
// on the probe eigenstates, the exact final joint state at t = T, the ideal
// probe rotation angle and pointer value, and the equivalent
// controlled-rotation gate of the ideal measurement.

#include <utility>

#include "qpm/linalg.hpp"
#include "qpm/model.hpp"

namespace qpm {

/// Effective system fields w+- (in units of omega0/2) for the two probe
/// branches, with magnitudes chi+- and polar/azimuthal angles.
struct EffectiveField {
  BlochVector w_plus, w_minus;
  double chi_plus = 0.0, chi_minus = 0.0;
  double theta_plus = 0.0, theta_minus = 0.0;
  double phi_plus = 0.0, phi_minus = 0.0;
};

/// w+-_xy = +-2*lambda*xi*(cos eta, sin eta)*sin gamma, w+-_z = 1 +- 2*lambda*xi*cos gamma.
/// Polar angles via atan2(|w_xy|, w_z), stable near the poles.
EffectiveField effective_field(double xi, double lambda, double gamma, double eta);

/// Probe-branch amplitudes (c+, c-) of cfg.probe_init in the |+/->_n basis.
std::pair<cplx, cplx> probe_amplitudes(const MeasurementConfig& cfg);

/// Exact final joint state at t = T for system initial state |0> and probe
/// initial amplitudes (c+, c-) along |+/->_n. Throws std::invalid_argument
/// if |c+|^2 + |c-|^2 deviates from 1 beyond 1e-10 or if the configured
/// system state is not |0>.
State4 exact_final_state(const MeasurementConfig& cfg, cplx c_plus, cplx c_minus);

/// Ideal probe rotation angle 2*lambda*cos(gamma).
double ideal_rotation_angle(double gamma, double lambda);

/// Ideal pointer expectation value sin((pi/2) cos gamma).
double ideal_pointer_value(double gamma);

/// 4x4 unitary of the ideal measurement as a controlled rotation: the system
/// basis state selects sign and angle of the probe rotation, with block
/// half-angle (pi/4) cos gamma.
ComplexMatrix controlled_rotation_gate(double gamma);

}  // namespace qpm
