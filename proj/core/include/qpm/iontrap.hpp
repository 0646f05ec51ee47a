#pragma once

// Trapped-ion parameter translation: coupling strength and ac Stark shifts
// (1/s) to the dimensionless measurement configuration, with feasibility
// validation against the addressable Stark-shift range.

#include <optional>
#include <stdexcept>
#include <string>

#include "qpm/model.hpp"

namespace qpm {

struct IonTrapParams {
  double j0 = 0.0;      // two-qubit coupling strength, 1/s
  double delta1 = 0.0;  // Stark shift on the system ion (protection), 1/s
  double delta2 = 0.0;  // Stark shift on the probe ion (intrinsic dynamics), 1/s
  double theta = 0.0;   // Bloch angle of the interaction axis
  double phi = 0.0;     // protection-axis phase
  double delta_range_multiple = 6.0;  // max Delta_i / j0
};

/// Parameters outside the experimentally addressable box.
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IonTrapMapping {
  MeasurementConfig measurement;
  std::optional<ProbeSelfConfig> probe_self;
  double interaction_time_s = 0.0;  // seconds
};

/// xi = j0/delta1 and gamma = pi/2 - (theta - phi), in the frame where the
/// protection axis is z and the (shared) measurement and probe-rotation axis
/// lies in the xz plane. delta2 > 0 becomes intrinsic probe dynamics about
/// the frame image of the lab z axis (delta_p = delta2/j0, axis y).
IonTrapMapping to_measurement_config(const IonTrapParams& p);

/// Physical measurement duration T = pi/(4 j0), seconds.
double interaction_time(const IonTrapParams& p);

}  // namespace qpm
