#pragma once

// Scenario drivers for the measurement protocols: single runs, repeated
// measurement chains with probe re-initialization, the post-measurement
// counter-rotation, and the quality metrics derived from a trajectory.

#include <optional>
#include <vector>

#include "qpm/analytic.hpp"
#include "qpm/evolve.hpp"
#include "qpm/model.hpp"

namespace qpm {

struct RunOptions {
  std::size_t samples = 1000;
  double dt = 0.0;  // RK4 step for open-system runs; <= 0 selects T/20000
};

struct MeasurementReport {
  double disturbance = 0.0;
  double final_system_purity = 0.0;
  double final_probe_purity = 0.0;
  double final_pointer = 0.0;
  double ideal_pointer = 0.0;
  double pointer_deviation = 0.0;
  TrajectoryRecord trajectory;
};

struct ChainReport {
  std::vector<MeasurementReport> per_cycle;
  double cumulative_disturbance = 0.0;  // over the full chain duration
  double worst_case_deviation = 0.0;    // final cycle
  double average_deviation = 0.0;       // mean over cycles
};

/// D = 1 - min_t Tr[rho_S(t) sigma_z], minimum over the sample points.
/// Throws std::invalid_argument for an empty trajectory.
double disturbance(const TrajectoryRecord& traj);

/// Relative difference |actual - ideal| / |ideal|, or the absolute difference
/// when |ideal| <= 0.05.
double pointer_deviation(double actual, double ideal);

/// One measurement over [0, T]: unitary when no environment is given,
/// Lindblad RK4 otherwise.
MeasurementReport run_single(const MeasurementConfig& cfg,
                             const std::optional<ProbeSelfConfig>& probe = {},
                             const std::optional<EnvironmentConfig>& env = {},
                             const RunOptions& opts = {});

/// n_cycles consecutive measurements: the system state threads through the
/// chain while the probe is re-initialized to cfg.probe_init each cycle.
ChainReport run_repeated(const MeasurementConfig& cfg, int n_cycles,
                         const std::optional<ProbeSelfConfig>& probe = {},
                         const std::optional<EnvironmentConfig>& env = {},
                         const RunOptions& opts = {});

/// Undo the free probe rotation accumulated over one measurement interval:
/// conjugation by exp(+i (omega_P T / 2) sigma.r) with omega_P T = (pi/2) delta_p.
ComplexMatrix apply_counter_rotation(const ComplexMatrix& probe_state,
                                     const ProbeSelfConfig& probe, double T);

}  // namespace qpm
