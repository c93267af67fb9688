#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tcvqite/model.hpp"
#include "tcvqite/pauli.hpp"
#include "tcvqite/statevector.hpp"

namespace tcvqite {

using ParameterVector = Eigen::VectorXd;

/// Layered Pauli-rotation circuit with a global-phase parameter:
///   state(theta) = e^{i theta_0} prod_{l=1..L} prod_j e^{i theta_{l,j} P_j} |ref>
/// Parameter 0 is the global phase; rotations follow layer by layer, within a
/// layer in generator order, applied to the reference state in that sequence.
class AnsatzProgram {
 public:
  AnsatzProgram(StateVector reference, std::vector<PauliTerm> layer_generators,
                int layers);

  int qubit_count() const { return reference_.qubit_count; }
  int layers() const { return layers_; }
  int generators_per_layer() const { return static_cast<int>(generators_.size()); }
  int parameter_count() const { return layers_ * generators_per_layer() + 1; }
  const StateVector& reference_state() const { return reference_; }
  const std::vector<PauliTerm>& layer_generators() const { return generators_; }

  StateVector evaluate(const ParameterVector& theta) const;
  TangentVector tangent(const ParameterVector& theta, int index) const;

  /// All analytic tangents as columns (column i = d state / d theta_i); the
  /// evaluated state is returned through `state`. One forward sweep plus one
  /// tail sweep per parameter.
  Eigen::MatrixXcd all_tangents(const ParameterVector& theta,
                                Eigen::VectorXcd& state) const;

 private:
  const CompiledPauli& gate(int position) const {
    return compiled_[position % generators_.size()];
  }
  void check_theta(const ParameterVector& theta) const;

  StateVector reference_;
  std::vector<PauliTerm> generators_;
  std::vector<CompiledPauli> compiled_;
  int layers_;
};

/// Hamiltonian-variational ansatz: generators are the non-identity Pauli
/// strings of the unmodified Hubbard Hamiltonian, unit coefficient, ordered
/// as all hopping strings (edge order, spin up then down, X-string before
/// Y-string) followed by all interaction strings (site order: Z_up, Z_dn,
/// Z_up Z_dn). Reference state from prepare_initial_state; if particles is
/// absent the sector is inferred from the full interacting ground state.
AnsatzProgram build_hva(const LatticeSpec& lat, const HubbardParams& p,
                        int layers,
                        std::optional<int> particles = std::nullopt);

/// Ordered HVA generator list (without reference-state preparation).
std::vector<PauliTerm> hva_generators(const LatticeSpec& lat);

/// Particle number whose sector holds the lowest eigenvalue of the full
/// interacting Hamiltonian; ties resolved toward fewer particles.
int infer_particle_sector(const LatticeSpec& lat, const HubbardParams& p);

/// Lowest eigenstate of the U=0 Hamiltonian in the given particle-number
/// sector. A degenerate lowest level is resolved by diagonalizing the full
/// interacting Hamiltonian inside the degenerate subspace and taking its
/// lowest eigenvector; the phase is fixed by making the first nonzero
/// amplitude real positive.
StateVector prepare_initial_state(const LatticeSpec& lat,
                                  const HubbardParams& p, int particles);

/// Each entry shifted by an independent uniform draw from [-bound, bound],
/// deterministic under the seed.
ParameterVector perturb_parameters(const ParameterVector& theta, double bound,
                                   std::uint64_t seed);

}  // namespace tcvqite
