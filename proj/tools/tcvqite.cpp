#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tcvqite/config.hpp"
#include "tcvqite/errors.hpp"
#include "tcvqite/experiments.hpp"
#include "tcvqite/oracle.hpp"

namespace {

using namespace tcvqite;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

/// trace CSV + manifest for a single evolve run.
void write_single_outputs(const RunConfig& cfg, const ExperimentSpec& spec,
                          const EvolutionTrace& trace) {
  const std::filesystem::path dir(cfg.output);
  const std::string name = "trace_L" + std::to_string(spec.layers_list.front()) +
                           "_" + method_name(spec.methods.front()) + "_" +
                           target_name(spec.targets.front()) + "_" +
                           std::to_string(spec.seed_base) + ".csv";
  write_text(dir / name, to_csv(trace));
  nlohmann::json manifest;
  manifest["version"] = "0.1.0";
  manifest["config"] = nlohmann::json::parse(config_to_json_text(cfg));
  manifest["rows"] = nlohmann::json::array();
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

int run_build(const RunConfig& cfg, bool regular) {
  const OperatorSum h = regular ? build_hubbard(cfg.lattice(), cfg.hubbard())
                                : build_tc_hubbard(cfg.lattice(), cfg.hubbard());
  std::cout << to_text(h);
  return kExitOk;
}

int run_exact(const RunConfig& cfg, bool regular, const std::string& dump) {
  const OperatorSum h = regular ? build_hubbard(cfg.lattice(), cfg.hubbard())
                                : build_tc_hubbard(cfg.lattice(), cfg.hubbard());
  std::optional<int> sector = cfg.particles;
  if (!sector) sector = infer_particle_sector(cfg.lattice(), cfg.hubbard());
  const SpectralResult ground = ground_pair(h, sector);
  std::printf("eigenvalue %.12e\n", ground.eigenvalue);
  std::printf("right_residual %.3e\n", ground.right_residual);
  std::printf("left_residual %.3e\n", ground.left_residual);
  std::printf("degeneracy %d\n", ground.degeneracy);
  std::printf("sector %d\n", *sector);
  if (!dump.empty()) {
    std::filesystem::path path(dump);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + dump);
    write_statevector(out, ground.right_vector);
  }
  return kExitOk;
}

int run_evolve(const RunConfig& cfg) {
  const ExperimentSpec spec = cfg.experiment_spec(false);
  const EvolutionTrace trace = run_single(spec);
  write_single_outputs(cfg, spec, trace);
  if (trace.failed) {
    std::cerr << "error numerical " << trace.error << "\n";
    return kExitNumerical;
  }
  const TraceRecord& last = trace.records.back();
  std::printf("final tau %.6f energy %.12e %+.12ei fid_right %.9f\n", last.tau,
              last.e_real, last.e_imag, last.fid_right.value_or(-1.0));
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, bool compare_targets) {
  const ExperimentSpec spec = cfg.experiment_spec(true);
  const SweepResult result =
      compare_targets ? run_target_comparison(spec) : run_depth_sweep(spec);
  write_sweep_outputs(cfg.output, result, config_to_json_text(cfg));
  for (const std::string& err : result.errors) {
    std::cerr << "warning run-failure " << err << "\n";
  }
  std::cout << sweep_csv(result);
  return kExitOk;
}

int run_optimize_j(const RunConfig& cfg, double j_min, double j_max,
                   double j_step) {
  if (!(j_step > 0) || j_max < j_min) {
    throw ConfigError("optimize-j: need j-max >= j-min and j-step > 0");
  }
  std::vector<double> grid;
  for (double j = j_min; j <= j_max + 1e-12; j += j_step) grid.push_back(j);
  ExperimentSpec spec = cfg.experiment_spec(false);
  const JScanResult scan = optimize_j(spec, grid);

  std::string csv = "j,mean_fid\n";
  char buf[64];
  for (const auto& [j, fid] : scan.grid_fidelity) {
    std::snprintf(buf, sizeof(buf), "%.12e,%.12e\n", j, fid);
    csv += buf;
  }
  const std::filesystem::path dir(cfg.output);
  write_text(dir / "jscan.csv", csv);
  nlohmann::json manifest;
  manifest["version"] = "0.1.0";
  manifest["config"] = nlohmann::json::parse(config_to_json_text(cfg));
  manifest["best_j"] = scan.best_j;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  std::printf("best_j %.6f\n", scan.best_j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational imaginary-time ground-state solver for the "
               "transcorrelated Fermi-Hubbard model"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)");

  RunConfig flags;  // staging area for flag values
  auto* o_rows = app.add_option("--rows", flags.rows, "lattice rows");
  auto* o_cols = app.add_option("--cols", flags.cols, "lattice columns");
  auto* o_t = app.add_option("--t", flags.t, "hopping amplitude");
  auto* o_u = app.add_option("--u", flags.u, "on-site interaction");
  auto* o_j = app.add_option("--j", flags.j, "transcorrelation strength");
  auto* o_layers = app.add_option("--layers", flags.layers, "ansatz layers");
  auto* o_layers_list =
      app.add_option("--layers-list", flags.layers_list, "sweep depths");
  int particles_flag = 0;
  auto* o_particles =
      app.add_option("--particles", particles_flag, "particle-number sector");
  auto* o_reps =
      app.add_option("--repetitions", flags.repetitions, "runs per cell");
  auto* o_methods = app.add_option("--methods", flags.methods,
                                   "imaginary_time and/or gradient_descent");
  auto* o_targets = app.add_option("--targets", flags.targets,
                                   "right_tc, left_tc, and/or regular");
  auto* o_dtau = app.add_option("--dtau", flags.dtau, "Euler step size");
  auto* o_steps = app.add_option("--steps", flags.steps, "Euler step count");
  auto* o_svd =
      app.add_option("--svd-cutoff", flags.svd_cutoff, "pseudoinverse cutoff");
  auto* o_tmode = app.add_option("--tangent-mode", flags.tangent_mode,
                                 "analytic or finite_difference");
  auto* o_fd = app.add_option("--fd-step", flags.fd_step,
                              "finite-difference step size");
  auto* o_rec = app.add_option("--record-interval", flags.record_interval,
                               "steps between trace records");
  auto* o_perturb = app.add_option("--perturb-bound", flags.perturb_bound,
                                   "initial-parameter perturbation bound");
  auto* o_seed = app.add_option("--seed", flags.seed, "base random seed");
  auto* o_output = app.add_option("--output", flags.output, "output directory");

  bool regular = false;
  std::string dump_vector;
  double j_min = -1.0, j_max = 0.0, j_step = 0.1;

  auto* cmd_build =
      app.add_subcommand("build", "print the Hamiltonian in operator text form");
  auto* cmd_exact =
      app.add_subcommand("exact", "exact ground eigenpair via the oracle");
  cmd_exact->add_option("--dump-vector", dump_vector,
                        "write the right ground vector in binary form");
  for (CLI::App* c : {cmd_build, cmd_exact}) {
    c->add_flag("--regular", regular,
                "use the plain Hubbard Hamiltonian instead of the TC one");
  }
  auto* cmd_evolve =
      app.add_subcommand("evolve", "single McLachlan evolution run");
  auto* cmd_sweep =
      app.add_subcommand("sweep", "depth sweep with method comparison");
  auto* cmd_compare = app.add_subcommand(
      "compare-targets", "depth sweep comparing evolution targets");
  auto* cmd_optj =
      app.add_subcommand("optimize-j", "scan J for best right-TC fidelity");
  cmd_optj->add_option("--j-min", j_min, "grid lower bound");
  cmd_optj->add_option("--j-max", j_max, "grid upper bound");
  cmd_optj->add_option("--j-step", j_step, "grid spacing");

  for (CLI::App* c :
       {cmd_build, cmd_exact, cmd_evolve, cmd_sweep, cmd_compare, cmd_optj}) {
    c->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg = load_config_file(config_path);
    const auto apply = [](const CLI::Option* opt, auto& dst, const auto& src) {
      if (opt->count() > 0) dst = src;
    };
    apply(o_rows, cfg.rows, flags.rows);
    apply(o_cols, cfg.cols, flags.cols);
    apply(o_t, cfg.t, flags.t);
    apply(o_u, cfg.u, flags.u);
    apply(o_j, cfg.j, flags.j);
    apply(o_layers, cfg.layers, flags.layers);
    apply(o_layers_list, cfg.layers_list, flags.layers_list);
    if (o_particles->count() > 0) cfg.particles = particles_flag;
    apply(o_reps, cfg.repetitions, flags.repetitions);
    apply(o_methods, cfg.methods, flags.methods);
    apply(o_targets, cfg.targets, flags.targets);
    apply(o_dtau, cfg.dtau, flags.dtau);
    apply(o_steps, cfg.steps, flags.steps);
    apply(o_svd, cfg.svd_cutoff, flags.svd_cutoff);
    apply(o_tmode, cfg.tangent_mode, flags.tangent_mode);
    apply(o_fd, cfg.fd_step, flags.fd_step);
    apply(o_rec, cfg.record_interval, flags.record_interval);
    apply(o_perturb, cfg.perturb_bound, flags.perturb_bound);
    apply(o_seed, cfg.seed, flags.seed);
    apply(o_output, cfg.output, flags.output);
    cfg.validate();

    if (cmd_build->parsed()) return run_build(cfg, regular);
    if (cmd_exact->parsed()) return run_exact(cfg, regular, dump_vector);
    if (cmd_evolve->parsed()) return run_evolve(cfg);
    if (cmd_sweep->parsed()) return run_sweep(cfg, false);
    if (cmd_compare->parsed()) return run_sweep(cfg, true);
    if (cmd_optj->parsed()) return run_optimize_j(cfg, j_min, j_max, j_step);
    std::cerr << "error config no subcommand\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error config " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error config " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    std::cerr << "error numerical " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error internal " << e.what() << "\n";
    return 1;
  }
}
