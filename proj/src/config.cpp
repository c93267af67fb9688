#include "tcvqite/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace tcvqite {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    fail(key, e.what());
  }
}

void read_particles(const json& obj, std::optional<int>& out) {
  const auto it = obj.find("particles");
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<int>();
  } catch (const json::exception& e) {
    fail("particles", e.what());
  }
}

}  // namespace

Method method_from_name(const std::string& name) {
  if (name == "imaginary_time") return Method::kImaginaryTime;
  if (name == "gradient_descent") return Method::kGradientDescent;
  fail("methods", "unknown method '" + name +
                      "' (expected imaginary_time or gradient_descent)");
}

EvolutionTarget target_from_name(const std::string& name) {
  if (name == "right_tc") return EvolutionTarget::kRight;
  if (name == "left_tc") return EvolutionTarget::kLeft;
  if (name == "regular") return EvolutionTarget::kRegular;
  fail("targets",
       "unknown target '" + name + "' (expected right_tc, left_tc, or regular)");
}

void RunConfig::validate() const {
  if (rows < 1) fail("rows", "must be >= 1");
  if (cols < 1) fail("cols", "must be >= 1");
  if (2 * rows * cols > 62) fail("rows", "lattice too large (mode count > 62)");
  if (!(t == t) || !(u == u) || !(j == j)) fail("t", "parameters must be finite numbers");
  if (layers < 0) fail("layers", "must be >= 0");
  if (layers_list.empty()) fail("layers_list", "must be nonempty");
  for (int l : layers_list) {
    if (l < 0) fail("layers_list", "entries must be >= 0");
  }
  if (particles && (*particles < 0 || *particles > 2 * rows * cols)) {
    fail("particles", "out of range for the lattice");
  }
  if (repetitions < 1) fail("repetitions", "must be >= 1");
  if (methods.empty()) fail("methods", "must be nonempty");
  for (const std::string& m : methods) method_from_name(m);
  if (targets.empty()) fail("targets", "must be nonempty");
  for (const std::string& tgt : targets) target_from_name(tgt);
  if (!(dtau > 0)) fail("dtau", "must be > 0");
  if (steps < 0) fail("steps", "must be >= 0");
  if (!(svd_cutoff > 0)) fail("svd_cutoff", "must be > 0");
  if (tangent_mode != "analytic" && tangent_mode != "finite_difference") {
    fail("tangent_mode", "expected analytic or finite_difference");
  }
  if (!(fd_step > 0)) fail("fd_step", "must be > 0");
  if (record_interval < 1) fail("record_interval", "must be >= 1");
  if (perturb_bound < 0) fail("perturb_bound", "must be >= 0");
  if (output.empty()) fail("output", "must be nonempty");
}

EvolutionConfig RunConfig::evolution_config() const {
  EvolutionConfig cfg;
  cfg.dtau = dtau;
  cfg.steps = steps;
  cfg.svd_cutoff = svd_cutoff;
  cfg.tangent_mode = tangent_mode == "analytic"
                         ? TangentMode::kAnalytic
                         : TangentMode::kFiniteDifference;
  cfg.fd_step = fd_step;
  cfg.record_interval = record_interval;
  return cfg;
}

ExperimentSpec RunConfig::experiment_spec(bool sweep_layers) const {
  validate();
  ExperimentSpec spec;
  spec.lattice = lattice();
  spec.params = hubbard();
  spec.layers_list = sweep_layers ? layers_list : std::vector<int>{layers};
  spec.repetitions = repetitions;
  spec.methods.clear();
  for (const std::string& m : methods) spec.methods.push_back(method_from_name(m));
  spec.targets.clear();
  for (const std::string& tgt : targets) {
    spec.targets.push_back(target_from_name(tgt));
  }
  spec.evolution = evolution_config();
  spec.seed_base = seed;
  spec.particles = particles;
  spec.perturb_bound = perturb_bound;
  return spec;
}

RunConfig config_from_json_text(const std::string& text) {
  // An empty (or whitespace-only) file means "all defaults".
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    RunConfig cfg;
    cfg.validate();
    return cfg;
  }
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!obj.is_object()) throw ConfigError("config must be a JSON object");
  // Accept a manifest: its "config" object is the effective configuration.
  if (obj.contains("config") && obj["config"].is_object()) {
    obj = obj["config"];
  }

  static const char* kKnown[] = {
      "rows",       "cols",         "t",           "u",
      "j",          "layers",       "layers_list", "particles",
      "repetitions", "methods",     "targets",     "dtau",
      "steps",      "svd_cutoff",   "tangent_mode", "fd_step",
      "record_interval", "perturb_bound", "seed",  "output"};
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig cfg;
  read_field(obj, "rows", cfg.rows);
  read_field(obj, "cols", cfg.cols);
  read_field(obj, "t", cfg.t);
  read_field(obj, "u", cfg.u);
  read_field(obj, "j", cfg.j);
  read_field(obj, "layers", cfg.layers);
  read_field(obj, "layers_list", cfg.layers_list);
  read_particles(obj, cfg.particles);
  read_field(obj, "repetitions", cfg.repetitions);
  read_field(obj, "methods", cfg.methods);
  read_field(obj, "targets", cfg.targets);
  read_field(obj, "dtau", cfg.dtau);
  read_field(obj, "steps", cfg.steps);
  read_field(obj, "svd_cutoff", cfg.svd_cutoff);
  read_field(obj, "tangent_mode", cfg.tangent_mode);
  read_field(obj, "fd_step", cfg.fd_step);
  read_field(obj, "record_interval", cfg.record_interval);
  read_field(obj, "perturb_bound", cfg.perturb_bound);
  read_field(obj, "seed", cfg.seed);
  read_field(obj, "output", cfg.output);
  cfg.validate();
  return cfg;
}

std::string config_to_json_text(const RunConfig& cfg) {
  json obj;
  obj["rows"] = cfg.rows;
  obj["cols"] = cfg.cols;
  obj["t"] = cfg.t;
  obj["u"] = cfg.u;
  obj["j"] = cfg.j;
  obj["layers"] = cfg.layers;
  obj["layers_list"] = cfg.layers_list;
  if (cfg.particles) {
    obj["particles"] = *cfg.particles;
  } else {
    obj["particles"] = nullptr;
  }
  obj["repetitions"] = cfg.repetitions;
  obj["methods"] = cfg.methods;
  obj["targets"] = cfg.targets;
  obj["dtau"] = cfg.dtau;
  obj["steps"] = cfg.steps;
  obj["svd_cutoff"] = cfg.svd_cutoff;
  obj["tangent_mode"] = cfg.tangent_mode;
  obj["fd_step"] = cfg.fd_step;
  obj["record_interval"] = cfg.record_interval;
  obj["perturb_bound"] = cfg.perturb_bound;
  obj["seed"] = cfg.seed;
  obj["output"] = cfg.output;
  return obj.dump(2);
}

RunConfig load_config_file(const std::string& path) {
  if (path.empty()) {
    RunConfig cfg;
    cfg.validate();
    return cfg;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

}  // namespace tcvqite
