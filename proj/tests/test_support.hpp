#pragma once

// Test-side oracles, built independently of the library internals:
//  - dense Pauli strings via explicit Kronecker products,
//  - dense fermionic ladder operators via occupation-bit manipulation,
//  - a deterministic random vector generator.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>

#include "tcvqite/pauli.hpp"

namespace test_support {

using Complex = std::complex<double>;

inline Eigen::Matrix2cd single_pauli(char letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex{0, -1}, Complex{0, 1}, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

/// letters[k] acts on qubit k; qubit 0 is the least significant index bit, so
/// it is the innermost Kronecker factor.
inline Eigen::MatrixXcd dense_pauli_string(const std::string& letters) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char letter : letters) {
    const Eigen::Matrix2cd p = single_pauli(letter);
    Eigen::MatrixXcd next(2 * m.rows(), 2 * m.cols());
    next.topLeftCorner(m.rows(), m.cols()) = p(0, 0) * m;
    next.topRightCorner(m.rows(), m.cols()) = p(0, 1) * m;
    next.bottomLeftCorner(m.rows(), m.cols()) = p(1, 0) * m;
    next.bottomRightCorner(m.rows(), m.cols()) = p(1, 1) * m;
    m = std::move(next);
  }
  return m;
}

inline Eigen::MatrixXcd dense_pauli_term(const tcvqite::PauliTerm& term) {
  return term.coefficient * dense_pauli_string(term.letters);
}

inline Eigen::MatrixXcd dense_operator_sum(const tcvqite::OperatorSum& sum) {
  const long dim = long{1} << sum.qubit_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [letters, coeff] : sum.terms()) {
    m += coeff * dense_pauli_string(letters);
  }
  return m;
}

/// Annihilation operator a_p on occupation-number basis states, with the
/// standard ordering sign (-1)^(number of occupied modes below p).
inline Eigen::MatrixXcd dense_annihilate(int mode_count, int p) {
  const long dim = long{1} << mode_count;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (long b = 0; b < dim; ++b) {
    if ((b >> p) & 1) {
      const long parity = __builtin_popcountll(b & ((long{1} << p) - 1));
      m(b ^ (long{1} << p), b) = parity % 2 == 0 ? 1.0 : -1.0;
    }
  }
  return m;
}

inline Eigen::MatrixXcd dense_create(int mode_count, int p) {
  return dense_annihilate(mode_count, p).adjoint();
}

inline Eigen::MatrixXcd dense_number(int mode_count, int p) {
  return dense_create(mode_count, p) * dense_annihilate(mode_count, p);
}

inline Eigen::MatrixXcd dense_fermion_term(int mode_count,
                                           const tcvqite::FermionTerm& term) {
  const long dim = long{1} << mode_count;
  Eigen::MatrixXcd m = term.coefficient * Eigen::MatrixXcd::Identity(dim, dim);
  for (const tcvqite::FermionOp& op : term.factors) {
    m = m * (op.dagger ? dense_create(mode_count, op.mode)
                       : dense_annihilate(mode_count, op.mode));
  }
  return m;
}

inline Eigen::MatrixXcd dense_fermion_sum(const tcvqite::FermionSum& f) {
  const long dim = long{1} << f.mode_count;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const tcvqite::FermionTerm& term : f.terms) {
    m += dense_fermion_term(f.mode_count, term);
  }
  return m;
}

inline Eigen::VectorXcd random_vector(long dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) v[i] = Complex{gauss(rng), gauss(rng)};
  return v;
}

inline Eigen::VectorXcd random_state(long dim, std::uint64_t seed) {
  Eigen::VectorXcd v = random_vector(dim, seed);
  v.normalize();
  return v;
}

}  // namespace test_support
