#include "tcvqite/statevector.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>

namespace tcvqite {

StateVector StateVector::zero_state(int qubit_count) {
  return basis_state(qubit_count, 0);
}

StateVector StateVector::basis_state(int qubit_count, std::uint64_t index) {
  const std::uint64_t dim = std::uint64_t{1} << qubit_count;
  if (index >= dim) throw std::out_of_range("basis_state: index out of range");
  StateVector s{qubit_count, Eigen::VectorXcd::Zero(static_cast<long>(dim))};
  s.amplitudes[static_cast<long>(index)] = 1.0;
  return s;
}

namespace {

inline double sign_of(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

CompiledPauli compile_pauli(const PauliTerm& term) {
  CompiledPauli cp;
  int y_count = 0;
  for (std::size_t q = 0; q < term.letters.size(); ++q) {
    const char c = term.letters[q];
    if (c == 'X' || c == 'Y') cp.xmask |= std::uint64_t{1} << q;
    if (c == 'Y' || c == 'Z') cp.sign_mask |= std::uint64_t{1} << q;
    if (c == 'Y') ++y_count;
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument("invalid Pauli letter");
    }
  }
  static const Complex i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cp.prefactor = term.coefficient * i_powers[y_count & 3];
  return cp;
}

void CompiledPauli::apply(const Eigen::VectorXcd& in,
                          Eigen::VectorXcd& out) const {
  const long dim = in.size();
  out.resize(dim);
  for (long b = 0; b < dim; ++b) {
    const std::uint64_t src = static_cast<std::uint64_t>(b) ^ xmask;
    out[b] = prefactor * sign_of(src & sign_mask) * in[static_cast<long>(src)];
  }
}

void CompiledPauli::rotate_inplace(double angle, Eigen::VectorXcd& v) const {
  const long dim = v.size();
  const double c = std::cos(angle);
  const Complex is = Complex{0, 1} * std::sin(angle);
  if (xmask == 0) {
    for (long b = 0; b < dim; ++b) {
      const Complex ph = prefactor * sign_of(static_cast<std::uint64_t>(b) & sign_mask);
      v[b] *= c + is * ph;
    }
    return;
  }
  const std::uint64_t lb = xmask & (~xmask + 1);  // lowest flipped bit
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(dim);
       base += 2 * lb) {
    for (std::uint64_t off = 0; off < lb; ++off) {
      const std::uint64_t b = base + off;
      const std::uint64_t b2 = b ^ xmask;
      const Complex ph1 = prefactor * sign_of(b & sign_mask);   // P: b -> b2
      const Complex ph2 = prefactor * sign_of(b2 & sign_mask);  // P: b2 -> b
      const Complex t1 = v[static_cast<long>(b)];
      const Complex t2 = v[static_cast<long>(b2)];
      v[static_cast<long>(b)] = c * t1 + is * ph2 * t2;
      v[static_cast<long>(b2)] = c * t2 + is * ph1 * t1;
    }
  }
}

void CompiledPauli::insert_inplace(Eigen::VectorXcd& v) const {
  const long dim = v.size();
  const Complex i{0, 1};
  if (xmask == 0) {
    for (long b = 0; b < dim; ++b) {
      v[b] *= i * prefactor * sign_of(static_cast<std::uint64_t>(b) & sign_mask);
    }
    return;
  }
  const std::uint64_t lb = xmask & (~xmask + 1);
  for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(dim);
       base += 2 * lb) {
    for (std::uint64_t off = 0; off < lb; ++off) {
      const std::uint64_t b = base + off;
      const std::uint64_t b2 = b ^ xmask;
      const Complex ph1 = prefactor * sign_of(b & sign_mask);
      const Complex ph2 = prefactor * sign_of(b2 & sign_mask);
      const Complex t1 = v[static_cast<long>(b)];
      v[static_cast<long>(b)] = i * ph2 * v[static_cast<long>(b2)];
      v[static_cast<long>(b2)] = i * ph1 * t1;
    }
  }
}

CompiledOperator::CompiledOperator(const OperatorSum& sum)
    : qubit_count_(sum.qubit_count()) {
  terms_.reserve(sum.term_count());
  for (const auto& [letters, coeff] : sum.terms()) {
    terms_.push_back(compile_pauli(PauliTerm{coeff, letters}));
  }
}

void CompiledOperator::apply(const Eigen::VectorXcd& in,
                             Eigen::VectorXcd& out) const {
  const long dim = in.size();
  out = Eigen::VectorXcd::Zero(dim);
  for (const CompiledPauli& t : terms_) {
    for (long b = 0; b < dim; ++b) {
      const std::uint64_t src = static_cast<std::uint64_t>(b) ^ t.xmask;
      out[b] += t.prefactor * sign_of(src & t.sign_mask) *
                in[static_cast<long>(src)];
    }
  }
}

Complex CompiledOperator::expectation(const Eigen::VectorXcd& v) const {
  apply(v, scratch_);
  return v.dot(scratch_);
}

TangentVector apply_pauli(const PauliTerm& term, const StateVector& s) {
  if (term.qubit_count() != s.qubit_count) {
    throw std::invalid_argument("apply_pauli: qubit count mismatch");
  }
  TangentVector out{s.qubit_count, {}};
  compile_pauli(term).apply(s.amplitudes, out.amplitudes);
  return out;
}

StateVector apply_rotation(const PauliTerm& generator, double angle,
                           const StateVector& s) {
  if (generator.qubit_count() != s.qubit_count) {
    throw std::invalid_argument("apply_rotation: qubit count mismatch");
  }
  if (std::abs(generator.coefficient - Complex{1.0, 0.0}) > 1e-14) {
    throw std::invalid_argument("apply_rotation: generator must have unit coefficient");
  }
  StateVector out = s;
  compile_pauli(generator).rotate_inplace(angle, out.amplitudes);
  return out;
}

TangentVector apply_sum(const OperatorSum& h, const StateVector& s) {
  if (h.qubit_count() != s.qubit_count) {
    throw std::invalid_argument("apply_sum: qubit count mismatch");
  }
  TangentVector out{s.qubit_count, {}};
  CompiledOperator(h).apply(s.amplitudes, out.amplitudes);
  return out;
}

Complex expectation(const OperatorSum& h, const StateVector& s) {
  if (h.qubit_count() != s.qubit_count) {
    throw std::invalid_argument("expectation: qubit count mismatch");
  }
  return CompiledOperator(h).expectation(s.amplitudes);
}

void write_statevector(std::ostream& out, const StateVector& s) {
  const std::uint64_t n = static_cast<std::uint64_t>(s.qubit_count);
  out.write(reinterpret_cast<const char*>(&n), 8);
  for (long b = 0; b < s.amplitudes.size(); ++b) {
    const double re = s.amplitudes[b].real();
    const double im = s.amplitudes[b].imag();
    out.write(reinterpret_cast<const char*>(&re), 8);
    out.write(reinterpret_cast<const char*>(&im), 8);
  }
}

StateVector read_statevector(std::istream& in) {
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  if (!in || n > 30) throw std::runtime_error("statevector read: bad header");
  StateVector s{static_cast<int>(n),
                Eigen::VectorXcd(long{1} << static_cast<int>(n))};
  for (long b = 0; b < s.amplitudes.size(); ++b) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), 8);
    in.read(reinterpret_cast<char*>(&im), 8);
    s.amplitudes[b] = Complex{re, im};
  }
  if (!in) throw std::runtime_error("statevector read: truncated data");
  return s;
}

}  // namespace tcvqite
