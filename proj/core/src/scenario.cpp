#include "qpm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qpm/protocol.hpp"

namespace qpm {

using nlohmann::json;

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Single: return "single";
    case ScenarioKind::Repeat: return "repeat";
    case ScenarioKind::Sweep: return "sweep";
    case ScenarioKind::Env: return "env";
    case ScenarioKind::IonTrap: return "iontrap";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ScenarioError(field + ": " + what);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(where + "." + key, "unknown field");
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

double require_number(const json& j, const std::string& parent, const std::string& key) {
  if (!j.contains(key)) fail(parent + "." + key, "missing required field");
  return get_number(j.at(key), parent + "." + key);
}

double number_or(const json& j, const std::string& parent, const std::string& key, double dflt) {
  return j.contains(key) ? get_number(j.at(key), parent + "." + key) : dflt;
}

BlochVector get_axis(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected a 3-vector [x, y, z]");
  BlochVector v{get_number(j[0], where), get_number(j[1], where), get_number(j[2], where)};
  if (v.norm() < 1e-6) fail(where, "zero vector is not a valid axis");
  return v.normalized();
}

State2 get_state(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected two [re, im] amplitude pairs");
  State2 s;
  for (std::size_t i = 0; i < 2; ++i) {
    const json& c = j[i];
    if (!c.is_array() || c.size() != 2) fail(where, "expected two [re, im] amplitude pairs");
    s[i] = cplx(get_number(c[0], where), get_number(c[1], where));
  }
  if (norm(s) < 1e-12) fail(where, "state must be nonzero");
  return normalized(s);
}

MeasurementConfig parse_measurement(const json& j) {
  check_keys(j, "measurement",
             {"xi", "lambda", "gamma", "eta", "m_axis", "probe_axis", "system_init", "probe_init"});
  MeasurementConfig cfg;
  cfg.xi = require_number(j, "measurement", "xi");
  cfg.lambda = number_or(j, "measurement", "lambda", cfg.lambda);
  if (j.contains("m_axis")) {
    if (j.contains("gamma") || j.contains("eta"))
      fail("measurement.m_axis", "give either m_axis or gamma/eta, not both");
    const BlochVector m = get_axis(j.at("m_axis"), "measurement.m_axis");
    const MeasurementConfig tmp = MeasurementConfig::from_axis(cfg.xi, m);
    cfg.gamma = tmp.gamma;
    cfg.eta = tmp.eta;
  } else if (j.contains("gamma")) {
    cfg.gamma = get_number(j.at("gamma"), "measurement.gamma");
    cfg.eta = number_or(j, "measurement", "eta", 0.0);
  } else {
    fail("measurement.gamma", "missing measured axis: give gamma (and eta) or m_axis");
  }
  if (j.contains("probe_axis")) cfg.probe_axis = get_axis(j.at("probe_axis"), "measurement.probe_axis");
  if (j.contains("system_init")) cfg.system_init = get_state(j.at("system_init"), "measurement.system_init");
  if (j.contains("probe_init")) cfg.probe_init = get_state(j.at("probe_init"), "measurement.probe_init");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  return cfg;
}

ProbeSelfConfig parse_probe_self(const json& j, bool& counter_rotation) {
  check_keys(j, "probe_self", {"delta_p", "axis", "counter_rotation"});
  ProbeSelfConfig p;
  p.delta_p = require_number(j, "probe_self", "delta_p");
  if (p.delta_p < 0.0) fail("probe_self.delta_p", "must be non-negative");
  if (j.contains("axis")) p.axis = get_axis(j.at("axis"), "probe_self.axis");
  if (j.contains("counter_rotation")) {
    if (!j.at("counter_rotation").is_boolean()) fail("probe_self.counter_rotation", "expected a boolean");
    counter_rotation = j.at("counter_rotation").get<bool>();
  }
  return p;
}

EnvironmentConfig parse_environment(const json& j) {
  check_keys(j, "environment", {"kappa_s", "kappa_p", "system_axis", "probe_axis"});
  EnvironmentConfig env;
  env.kappa_s = number_or(j, "environment", "kappa_s", 0.0);
  env.kappa_p = number_or(j, "environment", "kappa_p", 0.0);
  if (env.kappa_s < 0.0) fail("environment.kappa_s", "must be non-negative");
  if (env.kappa_p < 0.0) fail("environment.kappa_p", "must be non-negative");
  if (j.contains("system_axis")) env.system_axis = get_axis(j.at("system_axis"), "environment.system_axis");
  if (j.contains("probe_axis")) env.probe_axis = get_axis(j.at("probe_axis"), "environment.probe_axis");
  return env;
}

IonTrapParams parse_iontrap(const json& j) {
  check_keys(j, "iontrap", {"j0", "delta1", "delta2", "theta", "phi", "delta_range_multiple"});
  IonTrapParams p;
  p.j0 = require_number(j, "iontrap", "j0");
  p.delta1 = require_number(j, "iontrap", "delta1");
  p.delta2 = number_or(j, "iontrap", "delta2", 0.0);
  p.theta = number_or(j, "iontrap", "theta", 0.0);
  p.phi = number_or(j, "iontrap", "phi", 0.0);
  p.delta_range_multiple = number_or(j, "iontrap", "delta_range_multiple", 6.0);
  return p;
}

SweepSpec parse_sweep(const json& j) {
  check_keys(j, "sweep", {"parameter", "values"});
  SweepSpec s;
  if (!j.contains("parameter") || !j.at("parameter").is_string())
    fail("sweep.parameter", "missing or not a string");
  s.parameter = j.at("parameter").get<std::string>();
  static const std::set<std::string> known{"xi", "lambda", "gamma", "eta",
                                           "delta_p", "kappa_s", "kappa_p"};
  if (!known.count(s.parameter)) fail("sweep.parameter", "unknown parameter '" + s.parameter + "'");
  if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty())
    fail("sweep.values", "expected a non-empty array of numbers");
  for (const json& v : j.at("values")) s.values.push_back(get_number(v, "sweep.values"));
  return s;
}

OutputSpec parse_output(const json& j) {
  check_keys(j, "output", {"trajectory_path", "report_path", "sample_count"});
  OutputSpec o;
  if (j.contains("trajectory_path")) o.trajectory_path = j.at("trajectory_path").get<std::string>();
  if (j.contains("report_path")) o.report_path = j.at("report_path").get<std::string>();
  if (j.contains("sample_count")) {
    if (!j.at("sample_count").is_number_integer() || j.at("sample_count").get<long>() < 2)
      fail("output.sample_count", "expected an integer >= 2");
    o.sample_count = j.at("sample_count").get<std::size_t>();
  }
  return o;
}

void require_section(const Scenario& s, bool present, const char* name) {
  if (!present)
    fail(name, std::string("required for scenario '") + to_string(s.kind) + "'");
}

void forbid_section(const Scenario& s, bool present, const char* name, const char* hint = nullptr) {
  if (present)
    fail(name, std::string("not allowed for scenario '") + to_string(s.kind) + "'" +
                   (hint ? std::string(" (") + hint + ")" : ""));
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, "scenario file",
             {"scenario", "measurement", "probe_self", "environment", "chain_length", "sweep",
              "iontrap", "output"});

  Scenario s;
  if (!j.contains("scenario") || !j.at("scenario").is_string())
    fail("scenario", "missing or not a string");
  const std::string kind = j.at("scenario").get<std::string>();
  if (kind == "single") s.kind = ScenarioKind::Single;
  else if (kind == "repeat") s.kind = ScenarioKind::Repeat;
  else if (kind == "sweep") s.kind = ScenarioKind::Sweep;
  else if (kind == "env") s.kind = ScenarioKind::Env;
  else if (kind == "iontrap") s.kind = ScenarioKind::IonTrap;
  else fail("scenario", "unknown scenario '" + kind + "'");

  const bool has_measurement = j.contains("measurement");
  const bool has_probe = j.contains("probe_self");
  const bool has_env = j.contains("environment");
  const bool has_chain = j.contains("chain_length");
  const bool has_sweep = j.contains("sweep");
  const bool has_iontrap = j.contains("iontrap");

  switch (s.kind) {
    case ScenarioKind::Single:
      require_section(s, has_measurement, "measurement");
      forbid_section(s, has_env, "environment", "use scenario 'env' for open-system runs");
      forbid_section(s, has_chain, "chain_length");
      forbid_section(s, has_sweep, "sweep");
      forbid_section(s, has_iontrap, "iontrap");
      break;
    case ScenarioKind::Repeat:
      require_section(s, has_measurement, "measurement");
      forbid_section(s, has_sweep, "sweep");
      forbid_section(s, has_iontrap, "iontrap");
      break;
    case ScenarioKind::Sweep:
      require_section(s, has_measurement, "measurement");
      require_section(s, has_sweep, "sweep");
      forbid_section(s, has_chain, "chain_length");
      forbid_section(s, has_iontrap, "iontrap");
      break;
    case ScenarioKind::Env:
      require_section(s, has_measurement, "measurement");
      require_section(s, has_env, "environment");
      forbid_section(s, has_chain, "chain_length");
      forbid_section(s, has_sweep, "sweep");
      forbid_section(s, has_iontrap, "iontrap");
      break;
    case ScenarioKind::IonTrap:
      require_section(s, has_iontrap, "iontrap");
      forbid_section(s, has_measurement, "measurement");
      forbid_section(s, has_probe, "probe_self");
      forbid_section(s, has_env, "environment");
      forbid_section(s, has_chain, "chain_length");
      forbid_section(s, has_sweep, "sweep");
      break;
  }

  if (has_measurement) s.measurement = parse_measurement(j.at("measurement"));
  if (has_probe) s.probe_self = parse_probe_self(j.at("probe_self"), s.counter_rotation);
  if (has_env) s.environment = parse_environment(j.at("environment"));
  if (has_chain) {
    if (!j.at("chain_length").is_number_integer() || j.at("chain_length").get<long>() < 1)
      fail("chain_length", "expected an integer >= 1");
    s.chain_length = j.at("chain_length").get<int>();
  }
  if (has_sweep) {
    s.sweep = parse_sweep(j.at("sweep"));
    if (s.sweep->parameter == "delta_p" && !has_probe)
      fail("sweep.parameter", "delta_p requires a probe_self section");
    if ((s.sweep->parameter == "kappa_s" || s.sweep->parameter == "kappa_p") && !has_env)
      fail("sweep.parameter", s.sweep->parameter + " requires an environment section");
  }
  if (has_iontrap) s.iontrap = parse_iontrap(j.at("iontrap"));
  if (j.contains("output")) s.output = parse_output(j.at("output"));
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

namespace {

json axis_json(const BlochVector& v) { return json::array({v.x, v.y, v.z}); }

json state_json(const State2& s) {
  return json::array({json::array({s[0].real(), s[0].imag()}),
                      json::array({s[1].real(), s[1].imag()})});
}

json measurement_json(const MeasurementConfig& cfg) {
  return {{"xi", cfg.xi},
          {"lambda", cfg.lambda},
          {"gamma", cfg.gamma},
          {"eta", cfg.eta},
          {"m_axis", axis_json(cfg.measurement_axis())},
          {"probe_axis", axis_json(cfg.probe_axis)},
          {"readout_axis", axis_json(cfg.readout_axis())},
          {"system_init", state_json(normalized(cfg.system_init))},
          {"probe_init", state_json(normalized(cfg.probe_init))},
          {"duration", cfg.duration()}};
}

json config_json(const Scenario& s, const MeasurementConfig& cfg, const RunOptions& opts) {
  json c{{"scenario", to_string(s.kind)}, {"measurement", measurement_json(cfg)}};
  if (s.probe_self)
    c["probe_self"] = {{"delta_p", s.probe_self->delta_p},
                       {"axis", axis_json(s.probe_self->axis)},
                       {"counter_rotation", s.counter_rotation}};
  if (s.environment)
    c["environment"] = {{"kappa_s", s.environment->kappa_s},
                        {"kappa_p", s.environment->kappa_p},
                        {"system_axis", axis_json(s.environment->system_axis)},
                        {"probe_axis", axis_json(s.environment->probe_axis)}};
  if (s.kind == ScenarioKind::Repeat) c["chain_length"] = s.chain_length;
  c["samples"] = opts.samples;
  if (s.environment)
    c["dt"] = opts.dt > 0.0 ? opts.dt : cfg.duration() / 20000.0;
  return c;
}

json scalar_report_json(const MeasurementReport& r) {
  json j{{"disturbance", r.disturbance},
         {"final_system_purity", r.final_system_purity},
         {"final_probe_purity", r.final_probe_purity},
         {"final_pointer", r.final_pointer},
         {"ideal_pointer", r.ideal_pointer},
         {"pointer_deviation", r.pointer_deviation},
         {"final_system_bloch", axis_json(r.trajectory.system_bloch.back())},
         {"final_probe_bloch", axis_json(r.trajectory.probe_bloch.back())}};
  if (r.trajectory.hermiticity_defect > 0.0)
    j["hermiticity_defect"] = r.trajectory.hermiticity_defect;
  return j;
}

void add_counter_rotation(json& report, const MeasurementReport& r, const Scenario& s) {
  const ComplexMatrix probe_final = bloch_to_density(r.trajectory.probe_bloch.back());
  const ComplexMatrix corrected =
      apply_counter_rotation(probe_final, *s.probe_self, s.measurement.duration());
  const double pointer = bloch_vector(corrected).dot(s.measurement.readout_axis());
  report["counter_rotated_pointer"] = pointer;
  report["counter_rotated_deviation"] = pointer_deviation(pointer, r.ideal_pointer);
}

void write_csv_rows(std::FILE* f, const TrajectoryRecord& traj, double t_offset) {
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                 traj.times[i] + t_offset, traj.system_bloch[i].x, traj.system_bloch[i].y,
                 traj.system_bloch[i].z, traj.probe_bloch[i].x, traj.probe_bloch[i].y,
                 traj.probe_bloch[i].z, traj.system_purity[i], traj.probe_purity[i],
                 traj.probe_pointer[i]);
  }
}

class CsvFile {
 public:
  explicit CsvFile(const std::string& path) : f_(std::fopen(path.c_str(), "w")) {
    if (!f_) throw ScenarioError("cannot write trajectory file '" + path + "'");
    std::fputs("t,sx_S,sy_S,sz_S,sx_P,sy_P,sz_P,purity_S,purity_P,pointer\n", f_);
  }
  ~CsvFile() {
    if (f_) std::fclose(f_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;
  std::FILE* get() { return f_; }

 private:
  std::FILE* f_;
};

std::string resolve_path(const std::string& out_dir, const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return name;
  return (std::filesystem::path(out_dir) / p).string();
}

std::string indexed_path(const std::string& path, std::size_t i) {
  std::filesystem::path p(path);
  char suffix[16];
  std::snprintf(suffix, sizeof suffix, "_%03zu", i);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
  return out.string();
}

void apply_sweep_value(Scenario& s, const std::string& parameter, double value) {
  if (parameter == "xi") s.measurement.xi = value;
  else if (parameter == "lambda") s.measurement.lambda = value;
  else if (parameter == "gamma") s.measurement.gamma = value;
  else if (parameter == "eta") s.measurement.eta = value;
  else if (parameter == "delta_p") s.probe_self->delta_p = value;
  else if (parameter == "kappa_s") s.environment->kappa_s = value;
  else if (parameter == "kappa_p") s.environment->kappa_p = value;
}

json run_one(const Scenario& s, const RunOptions& opts, const std::string& csv_path) {
  const MeasurementReport r = run_single(s.measurement, s.probe_self, s.environment, opts);
  CsvFile csv(csv_path);
  write_csv_rows(csv.get(), r.trajectory, 0.0);
  json rep = scalar_report_json(r);
  if (s.counter_rotation && s.probe_self) add_counter_rotation(rep, r, s);
  return rep;
}

}  // namespace

std::string run_scenario(const Scenario& s, const std::string& out_dir, std::optional<double> dt,
                         std::optional<std::size_t> samples) {
  std::filesystem::create_directories(out_dir);
  RunOptions opts;
  opts.samples = samples.value_or(s.output.sample_count);
  if (opts.samples < 2) throw ScenarioError("output.sample_count: expected an integer >= 2");
  opts.dt = dt.value_or(0.0);

  const std::string report_path = resolve_path(out_dir, s.output.report_path);
  const std::string traj_path = resolve_path(out_dir, s.output.trajectory_path);

  json doc;
  switch (s.kind) {
    case ScenarioKind::Single:
    case ScenarioKind::Env: {
      doc["config"] = config_json(s, s.measurement, opts);
      doc["report"] = run_one(s, opts, traj_path);
      break;
    }
    case ScenarioKind::Repeat: {
      const ChainReport chain = run_repeated(s.measurement, s.chain_length, s.probe_self,
                                             s.environment, opts);
      doc["config"] = config_json(s, s.measurement, opts);
      json cycles = json::array();
      for (const MeasurementReport& r : chain.per_cycle) cycles.push_back(scalar_report_json(r));
      doc["report"] = {{"cumulative_disturbance", chain.cumulative_disturbance},
                       {"worst_case_deviation", chain.worst_case_deviation},
                       {"average_deviation", chain.average_deviation},
                       {"per_cycle", cycles}};
      CsvFile csv(traj_path);
      const double T = s.measurement.duration();
      for (std::size_t i = 0; i < chain.per_cycle.size(); ++i)
        write_csv_rows(csv.get(), chain.per_cycle[i].trajectory, static_cast<double>(i) * T);
      break;
    }
    case ScenarioKind::Sweep: {
      doc["config"] = config_json(s, s.measurement, opts);
      doc["sweep"] = {{"parameter", s.sweep->parameter}, {"values", s.sweep->values}};
      json runs = json::array();
      for (std::size_t i = 0; i < s.sweep->values.size(); ++i) {
        Scenario run = s;
        apply_sweep_value(run, s.sweep->parameter, s.sweep->values[i]);
        json rep = run_one(run, opts, indexed_path(traj_path, i));
        runs.push_back({{"value", s.sweep->values[i]},
                        {"config", config_json(run, run.measurement, opts)},
                        {"report", rep}});
      }
      doc["runs"] = runs;
      break;
    }
    case ScenarioKind::IonTrap: {
      const IonTrapMapping map = to_measurement_config(*s.iontrap);
      doc["config"] = {{"scenario", "iontrap"},
                       {"iontrap",
                        {{"j0", s.iontrap->j0},
                         {"delta1", s.iontrap->delta1},
                         {"delta2", s.iontrap->delta2},
                         {"theta", s.iontrap->theta},
                         {"phi", s.iontrap->phi},
                         {"delta_range_multiple", s.iontrap->delta_range_multiple}}}};
      json derived{{"measurement", measurement_json(map.measurement)},
                   {"interaction_time_s", map.interaction_time_s},
                   {"natural_duration", map.measurement.duration()}};
      if (map.probe_self)
        derived["probe_self"] = {{"delta_p", map.probe_self->delta_p},
                                 {"axis", axis_json(map.probe_self->axis)}};
      doc["derived"] = derived;
      break;
    }
  }

  const std::string text = doc.dump(2) + "\n";
  std::ofstream out(report_path, std::ios::binary);
  if (!out) throw ScenarioError("cannot write report file '" + report_path + "'");
  out << text;
  return text;
}

}  // namespace qpm
