#include "tcvqite/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "tcvqite/oracle.hpp"

namespace tcvqite {

std::string method_name(Method m) {
  switch (m) {
    case Method::kImaginaryTime: return "imaginary_time";
    case Method::kGradientDescent: return "gradient_descent";
  }
  throw std::invalid_argument("method_name: unknown method");
}

std::string target_name(EvolutionTarget t) {
  switch (t) {
    case EvolutionTarget::kRight: return "right_tc";
    case EvolutionTarget::kLeft: return "left_tc";
    case EvolutionTarget::kRegular: return "regular";
  }
  throw std::invalid_argument("target_name: unknown target");
}

void ExperimentSpec::validate() const {
  lattice.validate();
  params.validate();
  evolution.validate();
  if (layers_list.empty()) {
    throw std::invalid_argument("experiment: layers_list must be nonempty");
  }
  for (int layers : layers_list) {
    if (layers < 0) throw std::invalid_argument("experiment: layers must be >= 0");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("experiment: repetitions must be >= 1");
  }
  if (methods.empty()) {
    throw std::invalid_argument("experiment: methods must be nonempty");
  }
  if (targets.empty()) {
    throw std::invalid_argument("experiment: targets must be nonempty");
  }
  if (perturb_bound < 0) {
    throw std::invalid_argument("experiment: perturb_bound must be >= 0");
  }
}

int worker_count() {
  if (const char* env = std::getenv("TCVQITE_THREADS")) {
    const int requested = std::atoi(env);
    return requested >= 1 ? requested : 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

namespace {

void run_jobs(const std::vector<std::function<void()>>& jobs) {
  const int workers =
      std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (const auto& job : jobs) job();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next.fetch_add(1); k < jobs.size();
           k = next.fetch_add(1)) {
        jobs[k]();
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

/// Everything shared by the repetitions of one (layers, target) cell.
struct CellContext {
  OperatorSum h;
  AnsatzProgram ansatz;
  FidelityReferences refs;
  double e0 = 0.0;
};

OperatorSum target_hamiltonian(const ExperimentSpec& spec,
                               EvolutionTarget target) {
  switch (target) {
    case EvolutionTarget::kRight:
      return build_tc_hubbard(spec.lattice, spec.params);
    case EvolutionTarget::kLeft:
      return adjoint(build_tc_hubbard(spec.lattice, spec.params));
    case EvolutionTarget::kRegular:
      return build_hubbard(spec.lattice, spec.params);
  }
  throw std::invalid_argument("target_hamiltonian: unknown target");
}

CellContext make_cell(const ExperimentSpec& spec, int layers,
                      EvolutionTarget target, int sector) {
  OperatorSum h = target_hamiltonian(spec, target);
  const SpectralResult ground = ground_pair(h, sector);
  return CellContext{std::move(h),
                     build_hva(spec.lattice, spec.params, layers, sector),
                     FidelityReferences{ground.right_vector, ground.left_vector},
                     ground.eigenvalue};
}

int resolve_sector(const ExperimentSpec& spec) {
  return spec.particles ? *spec.particles
                        : infer_particle_sector(spec.lattice, spec.params);
}

EvolutionTrace run_one(const CellContext& cell, const ExperimentSpec& spec,
                       Method method, std::uint64_t seed) {
  EvolutionConfig cfg = spec.evolution;
  cfg.target = EvolutionTarget::kRight;  // references are cell-local
  const ParameterVector theta0 = perturb_parameters(
      ParameterVector::Zero(cell.ansatz.parameter_count()), spec.perturb_bound,
      seed);
  return method == Method::kImaginaryTime
             ? evolve(cell.ansatz, theta0, cell.h, cfg, &cell.refs)
             : gradient_descent(cell.ansatz, theta0, cell.h, cfg, &cell.refs);
}

/// Depth-0 cell: the unperturbed initial state, no evolution, no Im residual.
SweepRow initial_state_row(const CellContext& cell, Method method,
                           EvolutionTarget target) {
  SweepRow row;
  row.layers = 0;
  row.method = method_name(method);
  row.target = target_name(target);
  const StateVector& init = cell.ansatz.reference_state();
  row.mean_fid = fidelity(cell.refs.right, init);
  row.stderr_fid = 0.0;
  const Complex e = expectation(cell.h, init);
  row.mean_abs_re_resid = std::abs(e.real() - cell.e0);
  row.mean_abs_im_resid = std::nullopt;
  return row;
}

void aggregate_cell(const CellContext& cell, const ExperimentSpec& spec,
                    Method method, EvolutionTarget target, int layers,
                    SweepResult& out) {
  if (layers == 0) {
    out.rows.push_back(initial_state_row(cell, method, target));
    return;
  }
  SweepRow row;
  row.layers = layers;
  row.method = method_name(method);
  row.target = target_name(target);

  std::vector<EvolutionTrace> traces(spec.repetitions);
  std::vector<std::function<void()>> jobs;
  jobs.reserve(spec.repetitions);
  for (int r = 0; r < spec.repetitions; ++r) {
    const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(r);
    row.seeds.push_back(seed);
    jobs.push_back([&cell, &spec, &traces, method, seed, r] {
      traces[r] = run_one(cell, spec, method, seed);
    });
  }
  run_jobs(jobs);

  std::vector<double> fids;
  double re_resid_sum = 0.0;
  double im_resid_sum = 0.0;
  for (int r = 0; r < spec.repetitions; ++r) {
    EvolutionTrace& trace = traces[r];
    if (trace.failed || trace.records.empty()) {
      ++row.failures;
      out.errors.push_back(row.method + " " + row.target + " L=" +
                           std::to_string(layers) + " seed=" +
                           std::to_string(row.seeds[r]) + ": " +
                           (trace.error.empty() ? "no records" : trace.error));
    } else {
      const TraceRecord& last = trace.records.back();
      fids.push_back(last.fid_right.value());
      re_resid_sum += std::abs(last.e_real - cell.e0);
      im_resid_sum += std::abs(last.e_imag);
    }
    out.traces.push_back(TraceOutput{layers, row.method, row.target,
                                     row.seeds[r], std::move(trace)});
  }
  if (!fids.empty()) {
    const double n = static_cast<double>(fids.size());
    double mean = 0.0;
    for (double f : fids) mean += f;
    mean /= n;
    double var = 0.0;
    for (double f : fids) var += (f - mean) * (f - mean);
    const double sample_std = fids.size() > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    row.mean_fid = mean;
    row.stderr_fid = sample_std / std::sqrt(n);
    row.mean_abs_re_resid = re_resid_sum / n;
    row.mean_abs_im_resid = im_resid_sum / n;
  }
  out.rows.push_back(std::move(row));
}

}  // namespace

EvolutionTrace run_single(const ExperimentSpec& spec) {
  spec.validate();
  const int sector = resolve_sector(spec);
  const CellContext cell =
      make_cell(spec, spec.layers_list.front(), spec.targets.front(), sector);
  return run_one(cell, spec, spec.methods.front(), spec.seed_base);
}

SweepResult run_depth_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const int sector = resolve_sector(spec);
  const EvolutionTarget target = spec.targets.front();
  SweepResult out;
  for (int layers : spec.layers_list) {
    const CellContext cell = make_cell(spec, layers, target, sector);
    for (Method method : spec.methods) {
      aggregate_cell(cell, spec, method, target, layers, out);
    }
  }
  return out;
}

SweepResult run_target_comparison(const ExperimentSpec& spec) {
  spec.validate();
  const int sector = resolve_sector(spec);
  SweepResult out;
  for (int layers : spec.layers_list) {
    for (EvolutionTarget target : spec.targets) {
      const CellContext cell = make_cell(spec, layers, target, sector);
      aggregate_cell(cell, spec, Method::kImaginaryTime, target, layers, out);
    }
  }
  return out;
}

JScanResult optimize_j(const ExperimentSpec& spec,
                       const std::vector<double>& j_grid) {
  spec.validate();
  if (j_grid.empty()) {
    throw std::invalid_argument("optimize_j: empty J grid");
  }
  JScanResult out;
  bool have_best = false;
  double best_fid = 0.0;
  for (double j : j_grid) {
    ExperimentSpec point = spec;
    point.params.j = j;
    point.layers_list = {spec.layers_list.front()};
    point.methods = {Method::kImaginaryTime};
    point.targets = {EvolutionTarget::kRight};
    const SweepResult sweep = run_depth_sweep(point);
    const double fid = sweep.rows.front().mean_fid;
    out.grid_fidelity.emplace_back(j, fid);
    const bool better =
        !have_best || fid > best_fid + 1e-12 ||
        (std::abs(fid - best_fid) <= 1e-12 && std::abs(j) < std::abs(out.best_j));
    if (better) {
      have_best = true;
      best_fid = fid;
      out.best_j = j;
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out =
      "layers,method,target,mean_fid,stderr_fid,mean_abs_re_resid,"
      "mean_abs_im_resid\n";
  char buf[160];
  for (const SweepRow& row : result.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%s,%s,%.12e,%.12e,%.12e,", row.layers,
                  row.method.c_str(), row.target.c_str(), row.mean_fid,
                  row.stderr_fid, row.mean_abs_re_resid);
    out += buf;
    if (row.mean_abs_im_resid) {
      std::snprintf(buf, sizeof(buf), "%.12e", *row.mean_abs_im_resid);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_sweep_outputs(const std::string& dir, const SweepResult& result,
                         const std::string& config_echo_json) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto write_file = [&](const std::string& name,
                              const std::string& body) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
    out << body;
  };

  for (const TraceOutput& t : result.traces) {
    write_file("trace_L" + std::to_string(t.layers) + "_" + t.method + "_" +
                   t.target + "_" + std::to_string(t.seed) + ".csv",
               to_csv(t.trace));
  }
  write_file("sweep.csv", sweep_csv(result));

  nlohmann::json manifest;
  manifest["version"] = "0.1.0";
  manifest["config"] = nlohmann::json::parse(config_echo_json);
  manifest["rows"] = nlohmann::json::array();
  for (const SweepRow& row : result.rows) {
    manifest["rows"].push_back({{"layers", row.layers},
                                {"method", row.method},
                                {"target", row.target},
                                {"seeds", row.seeds},
                                {"failures", row.failures}});
  }
  manifest["errors"] = result.errors;
  write_file("manifest.json", manifest.dump(2) + "\n");
}

}  // namespace tcvqite
