#include "tcvqite/pauli.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tcvqite {

namespace {

int pauli_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
  }
  throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
}

// Single-qubit product table: product[a][b] = (phase, letter) with
// sigma_a * sigma_b = phase * sigma_letter. Phase encoded as power of i.
constexpr char kProductLetter[4][4] = {
    {'I', 'X', 'Y', 'Z'},
    {'X', 'I', 'Z', 'Y'},
    {'Y', 'Z', 'I', 'X'},
    {'Z', 'Y', 'X', 'I'},
};
// XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
constexpr int kProductPhasePower[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliTerm multiply_pauli(const PauliTerm& a, const PauliTerm& b) {
  if (a.letters.size() != b.letters.size()) {
    throw std::invalid_argument("multiply_pauli: letter length mismatch");
  }
  PauliTerm out;
  out.letters.resize(a.letters.size());
  int phase_power = 0;
  for (std::size_t q = 0; q < a.letters.size(); ++q) {
    const int ia = pauli_index(a.letters[q]);
    const int ib = pauli_index(b.letters[q]);
    out.letters[q] = kProductLetter[ia][ib];
    phase_power = (phase_power + kProductPhasePower[ia][ib]) & 3;
  }
  out.coefficient = a.coefficient * b.coefficient * kIPowers[phase_power];
  return out;
}

OperatorSum::OperatorSum(int qubit_count, double drop_tol)
    : qubit_count_(qubit_count), drop_tol_(drop_tol) {
  if (qubit_count < 0) throw std::invalid_argument("negative qubit count");
}

void OperatorSum::add(const PauliTerm& term) {
  if (term.qubit_count() != qubit_count_) {
    throw std::invalid_argument("add_into: qubit count mismatch");
  }
  auto it = terms_.find(term.letters);
  if (it == terms_.end()) {
    if (std::abs(term.coefficient) > drop_tol_) {
      terms_.emplace(term.letters, term.coefficient);
    }
    return;
  }
  it->second += term.coefficient;
  if (std::abs(it->second) <= drop_tol_) terms_.erase(it);
}

void OperatorSum::add(const OperatorSum& other) {
  for (const auto& [letters, coeff] : other.terms()) {
    add(PauliTerm{coeff, letters});
  }
}

std::size_t OperatorSum::non_identity_term_count() const {
  const std::string identity(qubit_count_, 'I');
  return terms_.size() - terms_.count(identity);
}

Complex OperatorSum::identity_coefficient() const {
  auto it = terms_.find(std::string(qubit_count_, 'I'));
  return it == terms_.end() ? Complex{0, 0} : it->second;
}

bool OperatorSum::is_hermitian() const {
  for (const auto& [letters, coeff] : terms_) {
    if (std::abs(coeff.imag()) > drop_tol_) return false;
  }
  return true;
}

double OperatorSum::coefficient_l1_norm() const {
  double total = 0.0;
  for (const auto& [letters, coeff] : terms_) total += std::abs(coeff);
  return total;
}

bool OperatorSum::operator==(const OperatorSum& other) const {
  return qubit_count_ == other.qubit_count_ && terms_ == other.terms_;
}

OperatorSum adjoint(const OperatorSum& sum) {
  OperatorSum out(sum.qubit_count(), sum.drop_tol());
  for (const auto& [letters, coeff] : sum.terms()) {
    out.add(PauliTerm{std::conj(coeff), letters});
  }
  return out;
}

namespace {

// The two Pauli strings of a ladder operator: a_p and a_p^dag split into
// (X_p + iY_p)/2 and (X_p - iY_p)/2, each with a Z string on all lower modes.
std::pair<PauliTerm, PauliTerm> jw_ladder(const FermionOp& op, int n) {
  if (op.mode < 0 || op.mode >= n) {
    throw std::out_of_range("jordan_wigner: mode index out of range");
  }
  std::string base(n, 'I');
  for (int q = 0; q < op.mode; ++q) base[q] = 'Z';
  std::string x = base, y = base;
  x[op.mode] = 'X';
  y[op.mode] = 'Y';
  const Complex y_coeff = op.dagger ? Complex{0, -0.5} : Complex{0, 0.5};
  return {PauliTerm{{0.5, 0}, std::move(x)}, PauliTerm{y_coeff, std::move(y)}};
}

}  // namespace

OperatorSum jordan_wigner(const FermionSum& f) {
  const int n = f.mode_count;
  OperatorSum out(n);
  for (const FermionTerm& term : f.terms) {
    std::vector<PauliTerm> expansion = {
        PauliTerm{term.coefficient, std::string(n, 'I')}};
    for (const FermionOp& op : term.factors) {
      const auto [x_part, y_part] = jw_ladder(op, n);
      std::vector<PauliTerm> next;
      next.reserve(expansion.size() * 2);
      for (const PauliTerm& p : expansion) {
        next.push_back(multiply_pauli(p, x_part));
        next.push_back(multiply_pauli(p, y_part));
      }
      expansion = std::move(next);
    }
    for (const PauliTerm& p : expansion) out.add(p);
  }
  return out;
}

std::string to_text(const OperatorSum& sum) {
  std::string out;
  char buf[128];
  for (const auto& [letters, coeff] : sum.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g ", coeff.real(), coeff.imag());
    out += buf;
    out += letters;
    out += '\n';
  }
  return out;
}

OperatorSum operator_sum_from_text(const std::string& text, int qubit_count) {
  OperatorSum out(qubit_count);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re = 0, im = 0;
    std::string letters;
    if (!(ls >> re >> im >> letters)) {
      throw std::invalid_argument("operator text parse error at line " +
                                  std::to_string(line_no));
    }
    out.add(PauliTerm{{re, im}, letters});
  }
  return out;
}

}  // namespace tcvqite
