#include "tcvqite/evolution.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>

namespace tcvqite {

void EvolutionConfig::validate() const {
  if (!(dtau > 0)) throw std::invalid_argument("evolution: dtau must be > 0");
  if (steps < 0) throw std::invalid_argument("evolution: steps must be >= 0");
  if (!(svd_cutoff > 0)) throw std::invalid_argument("evolution: svd_cutoff must be > 0");
  if (!(fd_step > 0)) throw std::invalid_argument("evolution: fd_step must be > 0");
  if (record_interval < 1) throw std::invalid_argument("evolution: record_interval must be >= 1");
}

namespace {

Eigen::MatrixXcd finite_difference_tangents(const AnsatzProgram& ansatz,
                                            const ParameterVector& theta,
                                            double fd_step,
                                            Eigen::VectorXcd& state) {
  state = ansatz.evaluate(theta).amplitudes;
  Eigen::MatrixXcd tangents(state.size(), ansatz.parameter_count());
  ParameterVector shifted = theta;
  for (int i = 0; i < ansatz.parameter_count(); ++i) {
    shifted[i] += fd_step;
    tangents.col(i) = (ansatz.evaluate(shifted).amplitudes - state) / fd_step;
    shifted[i] = theta[i];
  }
  return tangents;
}

struct AssembledStep {
  McLachlanSystem sys;
  Eigen::VectorXcd state;
};

AssembledStep assemble_step(const AnsatzProgram& ansatz,
                            const ParameterVector& theta,
                            const CompiledOperator& h, TangentMode mode,
                            double fd_step) {
  AssembledStep out;
  const Eigen::MatrixXcd tangents =
      mode == TangentMode::kAnalytic
          ? ansatz.all_tangents(theta, out.state)
          : finite_difference_tangents(ansatz, theta, fd_step, out.state);
  Eigen::VectorXcd h_state;
  h.apply(out.state, h_state);
  out.sys.a = (tangents.adjoint() * tangents).real();
  out.sys.c = (tangents.adjoint() * h_state).real();
  out.sys.energy = out.state.dot(h_state);
  if (!out.sys.a.allFinite() || !out.sys.c.allFinite()) {
    throw NumericalFailure("assemble: non-finite A or C entries");
  }
  return out;
}

}  // namespace

McLachlanSystem assemble(const AnsatzProgram& ansatz,
                         const ParameterVector& theta,
                         const CompiledOperator& h, TangentMode mode,
                         double fd_step) {
  if (h.qubit_count() != ansatz.qubit_count()) {
    throw std::invalid_argument("assemble: qubit count mismatch");
  }
  return assemble_step(ansatz, theta, h, mode, fd_step).sys;
}

UpdateResult solve_update(const McLachlanSystem& sys, double svd_cutoff) {
  const Eigen::MatrixXd a_sym = 0.5 * (sys.a + sys.a.transpose());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a_sym, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("solve_update: SVD did not converge");
  }
  UpdateResult out;
  Eigen::VectorXd inv_singular = Eigen::VectorXd::Zero(svd.singularValues().size());
  for (long i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > svd_cutoff) {
      inv_singular[i] = 1.0 / svd.singularValues()[i];
      ++out.rank;
    }
  }
  out.theta_dot = -(svd.matrixV() *
                    inv_singular.asDiagonal() * (svd.matrixU().transpose() * sys.c));
  return out;
}

ParameterVector euler_step(const ParameterVector& theta,
                           const Eigen::VectorXd& theta_dot, double dtau) {
  if (theta.size() != theta_dot.size()) {
    throw std::invalid_argument("euler_step: length mismatch");
  }
  return theta + dtau * theta_dot;
}

namespace {

EvolutionTrace run_loop(const AnsatzProgram& ansatz,
                        const ParameterVector& theta0, const OperatorSum& h,
                        const EvolutionConfig& cfg,
                        const FidelityReferences* references,
                        bool use_metric) {
  cfg.validate();
  if (theta0.size() != ansatz.parameter_count()) {
    throw std::invalid_argument("evolve: parameter count mismatch");
  }
  const CompiledOperator compiled(h);
  EvolutionTrace trace;
  ParameterVector theta = theta0;

  for (int step = 0; step <= cfg.steps; ++step) {
    AssembledStep at;
    UpdateResult update;
    try {
      at = assemble_step(ansatz, theta, compiled, cfg.tangent_mode, cfg.fd_step);
      if (use_metric) {
        update = solve_update(at.sys, cfg.svd_cutoff);
      } else {
        update.theta_dot = -at.sys.c;
        update.rank = static_cast<int>(at.sys.c.size());
      }
    } catch (const NumericalFailure& failure) {
      trace.failed = true;
      trace.error = failure.what();
      break;
    }

    if (step % cfg.record_interval == 0) {
      TraceRecord rec;
      rec.tau = step * cfg.dtau;
      rec.e_real = at.sys.energy.real();
      rec.e_imag = at.sys.energy.imag();
      if (references) {
        const StateVector current{ansatz.qubit_count(), at.state};
        rec.fid_right = std::norm(inner(references->right, current));
        rec.fid_left = std::norm(inner(references->left, current));
      }
      rec.grad_norm = at.sys.c.norm();
      rec.a_rank = update.rank;
      trace.records.push_back(std::move(rec));
    }
    if (step == cfg.steps) break;

    if (update.theta_dot.norm() * cfg.dtau > 1e3) {
      trace.failed = true;
      trace.error = "evolve: parameter update diverged";
      break;
    }
    theta = euler_step(theta, update.theta_dot, cfg.dtau);
  }
  trace.final_theta = theta;
  return trace;
}

}  // namespace

EvolutionTrace evolve(const AnsatzProgram& ansatz, const ParameterVector& theta0,
                      const OperatorSum& h, const EvolutionConfig& cfg,
                      const FidelityReferences* references) {
  return run_loop(ansatz, theta0, h, cfg, references, true);
}

EvolutionTrace gradient_descent(const AnsatzProgram& ansatz,
                                const ParameterVector& theta0,
                                const OperatorSum& h,
                                const EvolutionConfig& cfg,
                                const FidelityReferences* references) {
  return run_loop(ansatz, theta0, h, cfg, references, false);
}

std::string to_csv(const EvolutionTrace& trace) {
  std::string out = "tau,e_real,e_imag,fid_right,fid_left,grad_norm,a_rank\n";
  char buf[64];
  const auto field = [&](double value) {
    std::snprintf(buf, sizeof(buf), "%.12e", value);
    out += buf;
  };
  for (const TraceRecord& rec : trace.records) {
    field(rec.tau);
    out += ',';
    field(rec.e_real);
    out += ',';
    field(rec.e_imag);
    out += ',';
    if (rec.fid_right) field(*rec.fid_right);
    out += ',';
    if (rec.fid_left) field(*rec.fid_left);
    out += ',';
    field(rec.grad_norm);
    std::snprintf(buf, sizeof(buf), ",%d\n", rec.a_rank);
    out += buf;
  }
  return out;
}

}  // namespace tcvqite
