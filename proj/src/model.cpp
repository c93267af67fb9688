#include "tcvqite/model.hpp"

#include <cmath>
#include <stdexcept>

namespace tcvqite {

std::vector<std::pair<int, int>> LatticeSpec::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int s = r * cols + c;
      if (c + 1 < cols) out.emplace_back(s, s + 1);
      if (r + 1 < rows) out.emplace_back(s, s + cols);
    }
  }
  return out;
}

void LatticeSpec::validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("lattice rows and cols must be >= 1");
  }
}

void HubbardParams::validate() const {
  if (!std::isfinite(t) || !std::isfinite(u) || !std::isfinite(j)) {
    throw std::invalid_argument("Hubbard parameters must be finite");
  }
}

namespace {

std::vector<FermionOp> number_op(int mode) {
  return {{mode, true}, {mode, false}};
}

std::vector<FermionOp> concat(std::vector<FermionOp> a,
                              const std::vector<FermionOp>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

FermionSum hubbard_fermion_sum(const LatticeSpec& lat, const HubbardParams& p) {
  lat.validate();
  p.validate();
  FermionSum f{lat.qubit_count(), {}};
  for (const auto& [i, j] : lat.edges()) {
    for (int spin = 0; spin < 2; ++spin) {
      const int mi = lat.mode(i, spin);
      const int mj = lat.mode(j, spin);
      f.add(-p.t, {{mi, true}, {mj, false}});
      f.add(-p.t, {{mj, true}, {mi, false}});
    }
  }
  for (int s = 0; s < lat.sites(); ++s) {
    f.add(p.u, concat(number_op(lat.mode(s, 0)), number_op(lat.mode(s, 1))));
  }
  return f;
}

FermionSum tc_hubbard_fermion_sum(const LatticeSpec& lat,
                                  const HubbardParams& p) {
  FermionSum f = hubbard_fermion_sum(lat, p);
  const double c_source = std::exp(p.j) - 1.0;   // multiplies n_{j, sb}
  const double c_dest = std::exp(-p.j) - 1.0;    // multiplies n_{i, sb}
  const double c_pair = -2.0 * (std::cosh(p.j) - 1.0);
  // Correction runs over both orientations of every edge.
  for (const auto& edge : lat.edges()) {
    const std::pair<int, int> ordered[2] = {edge, {edge.second, edge.first}};
    for (const auto& [i, j] : ordered) {
      for (int spin = 0; spin < 2; ++spin) {
        const int opp = 1 - spin;
        const std::vector<FermionOp> hop = {{lat.mode(i, spin), true},
                                            {lat.mode(j, spin), false}};
        const auto ni = number_op(lat.mode(i, opp));
        const auto nj = number_op(lat.mode(j, opp));
        f.add(-p.t * c_source, concat(hop, nj));
        f.add(-p.t * c_dest, concat(hop, ni));
        f.add(-p.t * c_pair, concat(concat(hop, ni), nj));
      }
    }
  }
  return f;
}

OperatorSum build_hubbard(const LatticeSpec& lat, const HubbardParams& p) {
  return jordan_wigner(hubbard_fermion_sum(lat, p));
}

OperatorSum build_tc_hubbard(const LatticeSpec& lat, const HubbardParams& p) {
  return jordan_wigner(tc_hubbard_fermion_sum(lat, p));
}

OperatorSum build_noninteracting(const LatticeSpec& lat,
                                 const HubbardParams& p) {
  HubbardParams free = p;
  free.u = 0.0;
  return build_hubbard(lat, free);
}

OperatorSum gutzwiller_generator(const LatticeSpec& lat) {
  lat.validate();
  FermionSum f{lat.qubit_count(), {}};
  for (int s = 0; s < lat.sites(); ++s) {
    f.add(1.0, concat(number_op(lat.mode(s, 0)), number_op(lat.mode(s, 1))));
  }
  return jordan_wigner(f);
}

OperatorSum total_number_operator(const LatticeSpec& lat) {
  lat.validate();
  FermionSum f{lat.qubit_count(), {}};
  for (int m = 0; m < lat.qubit_count(); ++m) f.add(1.0, number_op(m));
  return jordan_wigner(f);
}

OperatorSum total_sz_operator(const LatticeSpec& lat) {
  lat.validate();
  FermionSum f{lat.qubit_count(), {}};
  for (int s = 0; s < lat.sites(); ++s) {
    f.add(0.5, number_op(lat.mode(s, 0)));
    f.add(-0.5, number_op(lat.mode(s, 1)));
  }
  return jordan_wigner(f);
}

}  // namespace tcvqite
