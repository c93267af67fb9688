#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcvqite/ansatz.hpp"
#include "tcvqite/evolution.hpp"
#include "tcvqite/model.hpp"

namespace tcvqite {

enum class Method { kImaginaryTime, kGradientDescent };

std::string method_name(Method m);
std::string target_name(EvolutionTarget t);

/// One numerical study: lattice/model, ansatz depths, repetition count with
/// perturbed starts, evolution method(s) and evolution target(s). Repetition
/// r uses seed seed_base + r for its parameter perturbation.
struct ExperimentSpec {
  LatticeSpec lattice;
  HubbardParams params;
  std::vector<int> layers_list = {0, 1, 2, 3};
  int repetitions = 10;
  std::vector<Method> methods = {Method::kImaginaryTime};
  std::vector<EvolutionTarget> targets = {EvolutionTarget::kRight};
  EvolutionConfig evolution;
  std::uint64_t seed_base = 0;
  std::optional<int> particles;
  double perturb_bound = 0.06283185307179587;  // 0.02 * pi

  void validate() const;
};

/// Aggregated statistics for one (layers, method, target) cell. The residuals
/// compare the final recorded energy with the oracle ground energy; the
/// imaginary residual is absent for the depth-0 (unevolved initial state)
/// row. Failed repetitions are excluded from the statistics and counted.
struct SweepRow {
  int layers = 0;
  std::string method;
  std::string target;
  double mean_fid = 0.0;
  double stderr_fid = 0.0;
  double mean_abs_re_resid = 0.0;
  std::optional<double> mean_abs_im_resid;
  std::vector<std::uint64_t> seeds;
  int failures = 0;
};

/// Full per-run trace kept alongside the aggregate, for file emission.
struct TraceOutput {
  int layers = 0;
  std::string method;
  std::string target;
  std::uint64_t seed = 0;
  EvolutionTrace trace;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<TraceOutput> traces;
  std::vector<std::string> errors;  // messages from failed repetitions
};

/// Single evolution run (first layers entry / method / target of the spec),
/// with the start perturbed under seed_base and fidelities recorded against
/// the oracle eigenvectors of the evolution Hamiltonian.
EvolutionTrace run_single(const ExperimentSpec& spec);

/// layers x methods grid against the first target. Depth 0 evaluates the
/// unperturbed initial state without evolution.
SweepResult run_depth_sweep(const ExperimentSpec& spec);

/// layers x targets grid under imaginary-time evolution. Each target evolves
/// under its own Hamiltonian (right: TC, left: TC adjoint, regular: Hubbard)
/// and is scored against that Hamiltonian's right ground eigenvector.
SweepResult run_target_comparison(const ExperimentSpec& spec);

struct JScanResult {
  std::vector<std::pair<double, double>> grid_fidelity;  // (J, mean fidelity)
  double best_j = 0.0;
};

/// Mean final right-target fidelity over the spec's repetitions for each J in
/// the grid (spec J ignored); best = maximal mean, ties toward smaller |J|.
JScanResult optimize_j(const ExperimentSpec& spec,
                       const std::vector<double>& j_grid);

std::string sweep_csv(const SweepResult& result);

/// Writes trace_L<layers>_<method>_<target>_<seed>.csv per trace, sweep.csv,
/// and manifest.json (config echo + per-row seeds + version) into dir,
/// creating it if needed.
void write_sweep_outputs(const std::string& dir, const SweepResult& result,
                         const std::string& config_echo_json);

/// Worker count for repetition-level parallelism: TCVQITE_THREADS if set
/// (clamped to >= 1), otherwise the hardware concurrency.
int worker_count();

}  // namespace tcvqite
