// qpm: run protective-measurement scenarios from JSON config files and emit
// trajectory CSV plus a metrics report in JSON.
//
// Exit codes: 0 success, 2 config parse/validation error, 3 integration
// failure, 4 infeasible ion-trap parameters.

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qpm/evolve.hpp"
#include "qpm/iontrap.hpp"
#include "qpm/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIntegration = 3;
constexpr int kExitInfeasible = 4;

struct SubcommandArgs {
  std::string config_path;
  std::string out_dir = ".";
  double dt = 0.0;
  std::size_t samples = 0;
};

int run(qpm::ScenarioKind kind, const SubcommandArgs& args) {
  qpm::Scenario scenario;
  try {
    scenario = qpm::load_scenario(args.config_path);
  } catch (const qpm::ScenarioError& e) {
    std::fprintf(stderr, "qpm: config error: %s\n", e.what());
    return kExitConfig;
  }
  if (scenario.kind != kind) {
    std::fprintf(stderr, "qpm: config error: scenario: file declares '%s' but the '%s' subcommand was used\n",
                 qpm::to_string(scenario.kind), qpm::to_string(kind));
    return kExitConfig;
  }

  std::optional<double> dt;
  if (args.dt > 0.0) dt = args.dt;
  std::optional<std::size_t> samples;
  if (args.samples > 0) samples = args.samples;

  try {
    const std::string report = qpm::run_scenario(scenario, args.out_dir, dt, samples);
    std::fputs(report.c_str(), stdout);
  } catch (const qpm::FeasibilityError& e) {
    std::fprintf(stderr, "qpm: infeasible parameters: %s\n", e.what());
    return kExitInfeasible;
  } catch (const qpm::IntegrationError& e) {
    std::fprintf(stderr, "qpm: %s\n", e.what());
    return kExitIntegration;
  } catch (const qpm::ScenarioError& e) {
    std::fprintf(stderr, "qpm: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "qpm: config error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protective measurement of a qubit by a qubit probe: scenario runner"};
  app.require_subcommand(1);

  struct Sub {
    qpm::ScenarioKind kind;
    const char* name;
    const char* description;
  };
  const Sub subs[] = {
      {qpm::ScenarioKind::Single, "single", "One closed-system measurement run"},
      {qpm::ScenarioKind::Repeat, "repeat", "A chain of consecutive measurements"},
      {qpm::ScenarioKind::Sweep, "sweep", "Parameter sweep over single runs"},
      {qpm::ScenarioKind::Env, "env", "One open-system (Lindblad) measurement run"},
      {qpm::ScenarioKind::IonTrap, "iontrap", "Translate trapped-ion parameters to a config"},
  };

  SubcommandArgs args;
  qpm::ScenarioKind selected{};
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.description);
    cmd->add_option("--config", args.config_path, "Scenario JSON file")->required();
    cmd->add_option("--out-dir", args.out_dir, "Directory for output files");
    cmd->add_option("--dt", args.dt, "RK4 step override for open-system runs");
    cmd->add_option("--samples", args.samples, "Trajectory sample count override");
    cmd->callback([&selected, kind = s.kind] { selected = kind; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(selected, args);
}
