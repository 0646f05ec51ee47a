#include "qpm/iontrap.hpp"

#include <cmath>
#include <cstdio>

#include "qpm/linalg.hpp"

namespace qpm {

namespace {

constexpr double kPi = std::numbers::pi;

void check_range(const char* name, double value, double hi) {
  if (value < 0.0 || value > hi) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "iontrap.%s = %.6g violates the feasible range [0, %.6g 1/s]",
                  name, value, hi);
    throw FeasibilityError(msg);
  }
}

}  // namespace

IonTrapMapping to_measurement_config(const IonTrapParams& p) {
  if (!(p.j0 > 0.0)) throw std::invalid_argument("iontrap.j0 must be positive");
  if (!(p.delta_range_multiple > 0.0))
    throw std::invalid_argument("iontrap.delta_range_multiple must be positive");

  const double hi = p.delta_range_multiple * p.j0;
  check_range("delta1", p.delta1, hi);
  check_range("delta2", p.delta2, hi);
  if (p.delta1 == 0.0)
    throw FeasibilityError("iontrap.delta1 = 0: xi = j0/delta1 is undefined (no protection)");

  // Frame rotation: protection axis -> z, interaction axis -> xz plane.
  // gamma is the angle between the interaction axis and the protection axis.
  const double g = 0.5 * kPi - (p.theta - p.phi);
  const BlochVector axis{std::sin(g), 0.0, std::cos(g)};

  MeasurementConfig cfg = MeasurementConfig::from_axis(p.j0 / p.delta1, axis);
  cfg.probe_axis = axis;
  // Probe initialized perpendicular to its rotation axis; readout axis n x p = +y.
  cfg.probe_init = axis_eigenstates(BlochVector{std::cos(g), 0.0, -std::sin(g)}).first;

  IonTrapMapping map;
  map.measurement = cfg;
  if (p.delta2 > 0.0) {
    // The lab z axis (the ac Stark direction) maps to y in the working frame.
    map.probe_self = ProbeSelfConfig{p.delta2 / p.j0, BlochVector{0.0, 1.0, 0.0}};
  }
  map.interaction_time_s = interaction_time(p);
  return map;
}

double interaction_time(const IonTrapParams& p) {
  if (!(p.j0 > 0.0)) throw std::invalid_argument("iontrap.j0 must be positive");
  return kPi / (4.0 * p.j0);
}

}  // namespace qpm
