#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tcvqite/pauli.hpp"

namespace tcvqite {

/// Normalized dense statevector. qubit 0 is the least significant bit of the
/// basis-state index.
struct StateVector {
  int qubit_count = 0;
  Eigen::VectorXcd amplitudes;

  static StateVector zero_state(int qubit_count);
  static StateVector basis_state(int qubit_count, std::uint64_t index);

  double norm() const { return amplitudes.norm(); }
};

/// Unnormalized vector in the same Hilbert space (derivatives, H|s>, ...).
struct TangentVector {
  int qubit_count = 0;
  Eigen::VectorXcd amplitudes;
};

/// Pauli string compiled to bit masks for fast dense application:
///   (P v)[b] = prefactor * (-1)^popcount((b^xmask) & sign_mask) * v[b^xmask]
/// where prefactor folds the term coefficient and the i-per-Y phase.
struct CompiledPauli {
  std::uint64_t xmask = 0;     // qubits carrying X or Y
  std::uint64_t sign_mask = 0; // qubits carrying Y or Z
  Complex prefactor{1.0, 0.0};

  // out = P in; buffers must be distinct and of equal size.
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  // v = e^{i angle P} v, valid only when the compiled term has |prefactor|=1
  // with zero phase beyond the i-per-Y factor (unit-coefficient generators).
  void rotate_inplace(double angle, Eigen::VectorXcd& v) const;
  // v = i P v
  void insert_inplace(Eigen::VectorXcd& v) const;
};

CompiledPauli compile_pauli(const PauliTerm& term);

/// OperatorSum compiled for repeated application to statevectors. Term order
/// is the sum's deterministic (lexicographic) order, so accumulation is
/// reproducible.
class CompiledOperator {
 public:
  CompiledOperator() = default;
  explicit CompiledOperator(const OperatorSum& sum);

  int qubit_count() const { return qubit_count_; }
  // out = H in
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Complex expectation(const Eigen::VectorXcd& v) const;

 private:
  int qubit_count_ = 0;
  std::vector<CompiledPauli> terms_;
  mutable Eigen::VectorXcd scratch_;
};

TangentVector apply_pauli(const PauliTerm& term, const StateVector& s);
StateVector apply_rotation(const PauliTerm& generator, double angle,
                           const StateVector& s);
TangentVector apply_sum(const OperatorSum& h, const StateVector& s);

template <typename A, typename B>
Complex inner(const A& a, const B& b) {
  if (a.qubit_count != b.qubit_count) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return a.amplitudes.dot(b.amplitudes);  // conjugates the left argument
}

Complex expectation(const OperatorSum& h, const StateVector& s);

/// Binary form: 8-byte little-endian qubit count, then 2^n (re, im) pairs of
/// little-endian doubles.
void write_statevector(std::ostream& out, const StateVector& s);
StateVector read_statevector(std::istream& in);

}  // namespace tcvqite
