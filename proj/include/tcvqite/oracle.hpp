#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tcvqite/errors.hpp"
#include "tcvqite/pauli.hpp"
#include "tcvqite/statevector.hpp"

namespace tcvqite {

inline constexpr int kDenseQubitCap = 14;

/// Ground eigenpair of a (possibly non-Hermitian) operator sum. For a
/// degenerate ground level, right_subspace/left_subspace hold an orthonormal
/// basis of the whole level and right_vector/left_vector its first member
/// after the deterministic phase fix.
struct SpectralResult {
  double eigenvalue = 0.0;
  StateVector right_vector;
  StateVector left_vector;
  double right_residual = 0.0;
  double left_residual = 0.0;
  int degeneracy = 1;
  Eigen::MatrixXcd right_subspace;
  Eigen::MatrixXcd left_subspace;
};

/// Dense matrix of an operator sum, consistent with the statevector bit
/// ordering (qubit 0 = least significant index bit).
Eigen::MatrixXcd dense_matrix(const OperatorSum& h);

/// Basis indices with the given total occupation, ascending.
std::vector<long> sector_indices(int qubit_count, int particles);

/// Restriction of an operator sum to the span of the given basis indices.
/// Throws if the operator couples the span to its complement (leakage above
/// the tolerance), so the restriction would not capture the full action.
Eigen::MatrixXcd dense_in_sector(const OperatorSum& h,
                                 const std::vector<long>& indices,
                                 double leakage_tol = 1e-9);

/// All eigenvalues, sorted by (real, imag). Uses the operator's conserved
/// (N_up, N_dn) block structure when present (verified numerically, not
/// assumed); falls back to a full dense solve otherwise.
std::vector<Complex> spectrum(const OperatorSum& h);

/// Ground eigenpair by shifted subspace iteration on (c I - H) with c above
/// the spectrum via the coefficient l1 bound; right vector from H, left from
/// its adjoint. If sector is given, iteration is confined to that
/// particle-number sector (valid only for particle-conserving operators;
/// enforced by the residual bound). Assumes a real spectrum; the residuals
/// and the imaginary part of the Ritz value are checked, and non-convergence
/// is reported, never masked.
SpectralResult ground_pair(const OperatorSum& h,
                           std::optional<int> sector = std::nullopt);

double fidelity(const StateVector& a, const StateVector& b);

/// Squared projection norm of s onto the span of orthonormal columns.
double subspace_fidelity(const Eigen::MatrixXcd& basis, const StateVector& s);

/// Normalized e^{-H tau} |s>, computed by repeated short-interval Taylor
/// products with renormalization after each interval. Each interval is summed
/// until the term norm falls below machine precision relative to the partial
/// sum, so the truncation error per interval is at rounding level.
StateVector exact_imaginary_time(const OperatorSum& h, const StateVector& s,
                                 double tau);

}  // namespace tcvqite
