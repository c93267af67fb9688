#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcvqite/experiments.hpp"

namespace tcvqite {

/// Invalid or malformed configuration; mapped to the config-error exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat run configuration: one JSON object whose keys mirror the CLI flags
/// one-to-one. A manifest.json (which wraps the echo under a "config" key)
/// can be fed back in place of a config file.
struct RunConfig {
  int rows = 2;
  int cols = 2;
  double t = 1.0;
  double u = 0.0;
  double j = 0.0;
  int layers = 3;
  std::vector<int> layers_list = {0, 1, 2, 3};
  std::optional<int> particles;
  int repetitions = 10;
  std::vector<std::string> methods = {"imaginary_time"};
  std::vector<std::string> targets = {"right_tc"};
  double dtau = 0.01;
  int steps = 500;
  double svd_cutoff = 1e-6;
  std::string tangent_mode = "analytic";
  double fd_step = 1e-10;
  int record_interval = 10;
  double perturb_bound = 0.06283185307179587;  // 0.02 * pi
  std::uint64_t seed = 0;
  std::string output = "runs/out";

  /// Throws ConfigError naming the offending field.
  void validate() const;

  LatticeSpec lattice() const { return LatticeSpec{rows, cols}; }
  HubbardParams hubbard() const { return HubbardParams{t, u, j}; }
  EvolutionConfig evolution_config() const;

  /// ExperimentSpec view; sweep_layers selects layers_list (sweeps) versus
  /// the single `layers` value (single runs).
  ExperimentSpec experiment_spec(bool sweep_layers) const;
};

Method method_from_name(const std::string& name);
EvolutionTarget target_from_name(const std::string& name);

/// Parse a config JSON object (or a manifest wrapping one under "config").
/// Unknown keys are rejected; missing keys keep their defaults.
RunConfig config_from_json_text(const std::string& text);

/// Full echo of the effective configuration, round-trippable through
/// config_from_json_text.
std::string config_to_json_text(const RunConfig& cfg);

/// Empty path yields the defaults; otherwise reads and parses the file.
RunConfig load_config_file(const std::string& path);

}  // namespace tcvqite
