#pragma once

// Declarative scenario files (JSON): one measurement scenario per file, with
// the outputs to produce. Used by the CLI and exercised directly in tests.
// Runs are deterministic: the same scenario file produces byte-identical
// trajectory CSV and report JSON.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpm/iontrap.hpp"
#include "qpm/model.hpp"

namespace qpm {

enum class ScenarioKind { Single, Repeat, Sweep, Env, IonTrap };

const char* to_string(ScenarioKind k);

/// Parse or validation failure; the message names the offending field.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;  // xi | lambda | gamma | eta | delta_p | kappa_s | kappa_p
  std::vector<double> values;
};

struct OutputSpec {
  std::string trajectory_path = "trajectory.csv";
  std::string report_path = "report.json";
  std::size_t sample_count = 1000;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::Single;
  MeasurementConfig measurement;
  std::optional<ProbeSelfConfig> probe_self;
  bool counter_rotation = false;
  std::optional<EnvironmentConfig> environment;
  int chain_length = 10;
  std::optional<SweepSpec> sweep;
  std::optional<IonTrapParams> iontrap;
  OutputSpec output;
};

/// Parse and validate scenario JSON text. Throws ScenarioError.
Scenario parse_scenario(const std::string& json_text);

/// Load a scenario file from disk. Throws ScenarioError.
Scenario load_scenario(const std::string& path);

/// Execute a scenario: writes the trajectory CSV (except for iontrap) and the
/// report JSON under out_dir, and returns the report JSON text. dt/samples
/// override the file's output settings when set.
std::string run_scenario(const Scenario& s, const std::string& out_dir,
                         std::optional<double> dt = {},
                         std::optional<std::size_t> samples = {});

}  // namespace qpm
