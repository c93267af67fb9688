#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tcvqite/ansatz.hpp"
#include "tcvqite/errors.hpp"
#include "tcvqite/pauli.hpp"
#include "tcvqite/statevector.hpp"

namespace tcvqite {

enum class TangentMode { kAnalytic, kFiniteDifference };
enum class EvolutionTarget { kRight, kLeft, kRegular };

struct EvolutionConfig {
  double dtau = 0.01;
  int steps = 500;
  double svd_cutoff = 1e-6;
  TangentMode tangent_mode = TangentMode::kAnalytic;
  double fd_step = 1e-10;
  int record_interval = 10;
  EvolutionTarget target = EvolutionTarget::kRight;

  void validate() const;
};

/// McLachlan linear system at a fixed parameter point:
///   A theta_dot = -C,  A_ij = Re<d_i phi|d_j phi>,  C_i = Re<d_i phi|H|phi>.
struct McLachlanSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd c;
  Complex energy;
};

struct TraceRecord {
  double tau = 0.0;
  double e_real = 0.0;
  double e_imag = 0.0;
  std::optional<double> fid_right;
  std::optional<double> fid_left;
  double grad_norm = 0.0;
  int a_rank = 0;
};

struct EvolutionTrace {
  std::vector<TraceRecord> records;
  ParameterVector final_theta;
  bool failed = false;
  std::string error;
};

/// Normalized reference vectors for fidelity recording.
struct FidelityReferences {
  StateVector right;
  StateVector left;
};

McLachlanSystem assemble(const AnsatzProgram& ansatz,
                         const ParameterVector& theta,
                         const CompiledOperator& h, TangentMode mode,
                         double fd_step);

struct UpdateResult {
  Eigen::VectorXd theta_dot;
  int rank = 0;
};

/// theta_dot = -A+ C with A symmetrized and the pseudoinverse keeping
/// singular values above the cutoff.
UpdateResult solve_update(const McLachlanSystem& sys, double svd_cutoff);

ParameterVector euler_step(const ParameterVector& theta,
                           const Eigen::VectorXd& theta_dot, double dtau);

EvolutionTrace evolve(const AnsatzProgram& ansatz, const ParameterVector& theta0,
                      const OperatorSum& h, const EvolutionConfig& cfg,
                      const FidelityReferences* references = nullptr);

/// Same loop with A replaced by the identity (theta_dot = -C).
EvolutionTrace gradient_descent(const AnsatzProgram& ansatz,
                                const ParameterVector& theta0,
                                const OperatorSum& h,
                                const EvolutionConfig& cfg,
                                const FidelityReferences* references = nullptr);

std::string to_csv(const EvolutionTrace& trace);

}  // namespace tcvqite
