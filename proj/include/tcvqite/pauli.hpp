#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcvqite {

using Complex = std::complex<double>;

inline constexpr double kDefaultDropTol = 1e-12;

/// A scalar multiple of a tensor product of single-qubit Pauli operators.
/// letters[k] is the operator acting on qubit k and is one of 'I','X','Y','Z';
/// the phase always lives in the coefficient, never in the letters.
struct PauliTerm {
  Complex coefficient;
  std::string letters;

  int qubit_count() const { return static_cast<int>(letters.size()); }
};

PauliTerm multiply_pauli(const PauliTerm& a, const PauliTerm& b);

/// Weighted sum of Pauli strings, kept simplified: one entry per distinct
/// letters key, entries below the drop tolerance removed. May be
/// non-Hermitian (complex coefficients).
class OperatorSum {
 public:
  explicit OperatorSum(int qubit_count, double drop_tol = kDefaultDropTol);

  int qubit_count() const { return qubit_count_; }
  double drop_tol() const { return drop_tol_; }
  const std::map<std::string, Complex>& terms() const { return terms_; }

  void add(const PauliTerm& term);
  void add(const OperatorSum& other);

  std::size_t term_count() const { return terms_.size(); }
  std::size_t non_identity_term_count() const;
  Complex identity_coefficient() const;

  /// True iff every coefficient is real within the drop tolerance. Valid as a
  /// Hermiticity test because distinct Pauli strings are linearly independent
  /// and each string is Hermitian.
  bool is_hermitian() const;

  /// Sum of |coefficient| over all terms; an upper bound on the operator norm.
  double coefficient_l1_norm() const;

  bool operator==(const OperatorSum& other) const;

 private:
  int qubit_count_;
  double drop_tol_;
  std::map<std::string, Complex> terms_;
};

inline OperatorSum& add_into(OperatorSum& sum, const PauliTerm& term) {
  sum.add(term);
  return sum;
}

OperatorSum adjoint(const OperatorSum& sum);

/// One fermionic creation (dagger) or annihilation operator on a mode.
struct FermionOp {
  int mode;
  bool dagger;
};

struct FermionTerm {
  Complex coefficient;
  std::vector<FermionOp> factors;
};

/// Unsimplified sum of products of fermionic operators. The qubit image under
/// jordan_wigner has qubit_count == mode_count.
struct FermionSum {
  int mode_count;
  std::vector<FermionTerm> terms;

  void add(Complex coefficient, std::vector<FermionOp> factors) {
    terms.push_back({coefficient, std::move(factors)});
  }
};

/// Jordan-Wigner encoding: a_p -> (X_p + iY_p)/2 (x) Z_{p-1} (x) ... (x) Z_0,
/// with the conjugate sign for a_p^dag. Products are expanded term by term
/// and the result simplified.
OperatorSum jordan_wigner(const FermionSum& f);

/// Text form: one `<re> <im> <letters>` line per term, sorted
/// lexicographically by letters. letters[0] is qubit 0.
std::string to_text(const OperatorSum& sum);
OperatorSum operator_sum_from_text(const std::string& text, int qubit_count);

}  // namespace tcvqite
