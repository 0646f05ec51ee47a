// End-to-end checks of the qpm binary: subcommands, exit codes and outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path scenario_dir() { return fs::path(QPM_SCENARIO_DIR); }

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qpm_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QPM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("cli runs a checked-in scenario") {
  const fs::path dir = fresh_dir("single");
  const std::string config = (scenario_dir() / "fig1b.json").string();
  CHECK(run_cli("single --config " + config + " --out-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "fig1b_report.json"));
  CHECK(fs::exists(dir / "fig1b_trajectory.csv"));
}

TEST_CASE("cli honours the samples override") {
  const fs::path dir = fresh_dir("samples");
  const std::string config = (scenario_dir() / "fig1b.json").string();
  CHECK(run_cli("single --config " + config + " --out-dir " + dir.string() + " --samples 50") == 0);
  std::ifstream csv(dir / "fig1b_trajectory.csv");
  std::size_t lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == 51);  // header + 50 samples
}

TEST_CASE("cli runs a sweep with indexed trajectories") {
  const fs::path dir = fresh_dir("sweep");
  const std::string config = (scenario_dir() / "fig1_sweep.json").string();
  CHECK(run_cli("sweep --config " + config + " --out-dir " + dir.string() + " --samples 100") == 0);
  CHECK(fs::exists(dir / "fig1_sweep_report.json"));
  for (const char* name : {"fig1_sweep_trajectory_000.csv", "fig1_sweep_trajectory_001.csv",
                           "fig1_sweep_trajectory_002.csv"})
    CHECK(fs::exists(dir / name));
}

TEST_CASE("cli rejects malformed configs with exit 2") {
  const fs::path dir = fresh_dir("bad");
  const fs::path bad_axis = write_config(dir, "bad_axis.json", R"({
    "scenario": "single",
    "measurement": { "xi": 0.1, "m_axis": [0, 0, 0] }
  })");
  CHECK(run_cli("single --config " + bad_axis.string() + " --out-dir " + dir.string()) == 2);

  const fs::path not_json = write_config(dir, "not_json.json", "{nope");
  CHECK(run_cli("single --config " + not_json.string()) == 2);

  CHECK(run_cli("single --config " + (dir / "missing.json").string()) == 2);
}

TEST_CASE("cli rejects a subcommand/scenario mismatch with exit 2") {
  const std::string config = (scenario_dir() / "fig1b.json").string();
  CHECK(run_cli("repeat --config " + config) == 2);
}

TEST_CASE("cli reports integration failure with exit 3") {
  const fs::path dir = fresh_dir("unstable");
  const std::string config = (scenario_dir() / "fig6a.json").string();
  CHECK(run_cli("env --config " + config + " --out-dir " + dir.string() + " --dt 5.0") == 3);
}

TEST_CASE("cli reports infeasible ion-trap parameters with exit 4") {
  const fs::path dir = fresh_dir("infeasible");
  const fs::path config = write_config(dir, "out_of_range.json", R"({
    "scenario": "iontrap",
    "iontrap": { "j0": 400.0, "delta1": 4000.0, "delta_range_multiple": 6.0 }
  })");
  CHECK(run_cli("iontrap --config " + config.string() + " --out-dir " + dir.string()) == 4);
}

TEST_CASE("cli iontrap prints the derived config") {
  const fs::path dir = fresh_dir("iontrap_ok");
  const std::string config = (scenario_dir() / "iontrap_smith.json").string();
  CHECK(run_cli("iontrap --config " + config + " --out-dir " + dir.string()) == 0);
  std::ifstream report(dir / "iontrap_smith_report.json");
  std::string text((std::istreambuf_iterator<char>(report)), std::istreambuf_iterator<char>());
  CHECK(text.find("0.125") != std::string::npos);
}
