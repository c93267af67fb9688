#pragma once

#include <utility>
#include <vector>

#include "tcvqite/pauli.hpp"

namespace tcvqite {

/// Rectangular lattice with open boundaries. Sites are indexed row-major;
/// spin-orbital mode index = 2*site + spin with spin up = 0, down = 1, so the
/// two spins of a site sit on adjacent Jordan-Wigner modes.
struct LatticeSpec {
  int rows = 1;
  int cols = 1;

  int sites() const { return rows * cols; }
  int qubit_count() const { return 2 * sites(); }
  int mode(int site, int spin) const { return 2 * site + spin; }

  /// Each nearest-neighbour pair exactly once, i < j, in row-major scan order
  /// (right neighbour before down neighbour).
  std::vector<std::pair<int, int>> edges() const;

  void validate() const;
};

struct HubbardParams {
  double t = 1.0;  // nearest-neighbour hopping
  double u = 0.0;  // on-site interaction
  double j = 0.0;  // Gutzwiller transformation strength

  void validate() const;
};

/// Fermionic form of the Fermi-Hubbard Hamiltonian
///   -t sum_{<i,j>,sigma} (a+_{i s} a_{j s} + h.c.) + U sum_i n_{i up} n_{i dn}
FermionSum hubbard_fermion_sum(const LatticeSpec& lat, const HubbardParams& p);

/// Fermionic form of the Gutzwiller-transcorrelated Hamiltonian: the Hubbard
/// Hamiltonian plus, for every ordered nearest-neighbour pair (i, j) and spin,
///   -t a+_{i s} a_{j s} [ (e^J - 1) n_{j sb} + (e^-J - 1) n_{i sb}
///                         - 2 (cosh J - 1) n_{i sb} n_{j sb} ]
/// with sb the opposite spin. Non-Hermitian for J != 0, isospectral with the
/// Hubbard Hamiltonian for every J.
FermionSum tc_hubbard_fermion_sum(const LatticeSpec& lat, const HubbardParams& p);

OperatorSum build_hubbard(const LatticeSpec& lat, const HubbardParams& p);
OperatorSum build_tc_hubbard(const LatticeSpec& lat, const HubbardParams& p);

/// build_hubbard with U forced to zero.
OperatorSum build_noninteracting(const LatticeSpec& lat, const HubbardParams& p);

/// Qubit image of sum_i n_{i up} n_{i dn}; diagonal (I/Z letters only).
OperatorSum gutzwiller_generator(const LatticeSpec& lat);

/// Qubit image of the total particle number operator.
OperatorSum total_number_operator(const LatticeSpec& lat);

/// Qubit image of the total S_z operator (in units of hbar/2 per particle,
/// i.e. sum_i (n_{i up} - n_{i dn}) / 2).
OperatorSum total_sz_operator(const LatticeSpec& lat);

}  // namespace tcvqite
