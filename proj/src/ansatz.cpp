#include "tcvqite/ansatz.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tcvqite/oracle.hpp"

namespace tcvqite {

AnsatzProgram::AnsatzProgram(StateVector reference,
                             std::vector<PauliTerm> layer_generators,
                             int layers)
    : reference_(std::move(reference)),
      generators_(std::move(layer_generators)),
      layers_(layers) {
  if (layers < 0) throw std::invalid_argument("ansatz: layers must be >= 0");
  if (std::abs(reference_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("ansatz: reference state must be normalized");
  }
  compiled_.reserve(generators_.size());
  for (const PauliTerm& g : generators_) {
    if (g.qubit_count() != reference_.qubit_count) {
      throw std::invalid_argument("ansatz: generator qubit count mismatch");
    }
    if (std::abs(g.coefficient - Complex{1.0, 0.0}) > 1e-14) {
      throw std::invalid_argument("ansatz: generators must have unit coefficient");
    }
    compiled_.push_back(compile_pauli(g));
  }
}

void AnsatzProgram::check_theta(const ParameterVector& theta) const {
  if (theta.size() != parameter_count()) {
    throw std::invalid_argument("ansatz: parameter count mismatch");
  }
}

StateVector AnsatzProgram::evaluate(const ParameterVector& theta) const {
  check_theta(theta);
  Eigen::VectorXcd v = reference_.amplitudes;
  const int rotations = layers_ * generators_per_layer();
  for (int k = 0; k < rotations; ++k) {
    gate(k).rotate_inplace(theta[k + 1], v);
  }
  v *= std::exp(Complex{0, theta[0]});
  return StateVector{reference_.qubit_count, std::move(v)};
}

TangentVector AnsatzProgram::tangent(const ParameterVector& theta,
                                     int index) const {
  check_theta(theta);
  if (index < 0 || index >= parameter_count()) {
    throw std::out_of_range("ansatz tangent: index out of range");
  }
  if (index == 0) {
    StateVector s = evaluate(theta);
    return TangentVector{s.qubit_count, Complex{0, 1} * s.amplitudes};
  }
  Eigen::VectorXcd v = reference_.amplitudes;
  const int rotations = layers_ * generators_per_layer();
  const int k0 = index - 1;
  for (int k = 0; k < k0; ++k) gate(k).rotate_inplace(theta[k + 1], v);
  gate(k0).insert_inplace(v);
  for (int k = k0; k < rotations; ++k) gate(k).rotate_inplace(theta[k + 1], v);
  v *= std::exp(Complex{0, theta[0]});
  return TangentVector{reference_.qubit_count, std::move(v)};
}

Eigen::MatrixXcd AnsatzProgram::all_tangents(const ParameterVector& theta,
                                             Eigen::VectorXcd& state) const {
  check_theta(theta);
  const int rotations = layers_ * generators_per_layer();
  const long dim = reference_.amplitudes.size();
  Eigen::MatrixXcd tangents(dim, parameter_count());

  // Forward sweep: column k+1 holds the prefix state before rotation k.
  Eigen::VectorXcd v = reference_.amplitudes;
  for (int k = 0; k < rotations; ++k) {
    tangents.col(k + 1) = v;
    gate(k).rotate_inplace(theta[k + 1], v);
  }
  const Complex phase = std::exp(Complex{0, theta[0]});
  state = phase * v;
  tangents.col(0) = Complex{0, 1} * state;

  // Tail sweep per parameter: insert iP_k, then the remaining rotations.
  for (int k = 0; k < rotations; ++k) {
    Eigen::VectorXcd w = tangents.col(k + 1);
    gate(k).insert_inplace(w);
    for (int m = k; m < rotations; ++m) gate(m).rotate_inplace(theta[m + 1], w);
    tangents.col(k + 1) = phase * w;
  }
  return tangents;
}

std::vector<PauliTerm> hva_generators(const LatticeSpec& lat) {
  lat.validate();
  const int n = lat.qubit_count();
  std::vector<PauliTerm> out;
  for (const auto& [i, j] : lat.edges()) {
    for (int spin = 0; spin < 2; ++spin) {
      FermionSum hop{n, {}};
      hop.add(1.0, {{lat.mode(i, spin), true}, {lat.mode(j, spin), false}});
      hop.add(1.0, {{lat.mode(j, spin), true}, {lat.mode(i, spin), false}});
      std::vector<std::string> strings;
      const OperatorSum mapped = jordan_wigner(hop);
      for (const auto& [letters, coeff] : mapped.terms()) {
        strings.push_back(letters);
      }
      // Two strings, identical apart from X vs Y endpoints; 'X' < 'Y' puts
      // the X-string first.
      std::sort(strings.begin(), strings.end());
      for (std::string& s : strings) out.push_back(PauliTerm{1.0, std::move(s)});
    }
  }
  for (int s = 0; s < lat.sites(); ++s) {
    const auto z_string = [&](std::initializer_list<int> qubits) {
      std::string letters(n, 'I');
      for (int q : qubits) letters[q] = 'Z';
      return PauliTerm{1.0, std::move(letters)};
    };
    const int up = lat.mode(s, 0);
    const int dn = lat.mode(s, 1);
    out.push_back(z_string({up}));
    out.push_back(z_string({dn}));
    out.push_back(z_string({up, dn}));
  }
  return out;
}

int infer_particle_sector(const LatticeSpec& lat, const HubbardParams& p) {
  const OperatorSum h = build_hubbard(lat, p);
  int best_n = 0;
  double best_e = std::numeric_limits<double>::infinity();
  for (int particles = 0; particles <= lat.qubit_count(); ++particles) {
    const auto indices = sector_indices(lat.qubit_count(), particles);
    const Eigen::MatrixXcd block = dense_in_sector(h, indices);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block,
                                                           Eigen::EigenvaluesOnly);
    const double e0 = solver.eigenvalues()[0];
    if (e0 < best_e - 1e-12) {
      best_e = e0;
      best_n = particles;
    }
  }
  return best_n;
}

StateVector prepare_initial_state(const LatticeSpec& lat,
                                  const HubbardParams& p, int particles) {
  lat.validate();
  if (particles < 0 || particles > lat.qubit_count()) {
    throw std::invalid_argument("prepare_initial_state: particle number out of range");
  }
  const auto indices = sector_indices(lat.qubit_count(), particles);
  const Eigen::MatrixXcd free_block =
      dense_in_sector(build_noninteracting(lat, p), indices);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(free_block);
  const auto& levels = solver.eigenvalues();

  long degeneracy = 1;
  while (degeneracy < levels.size() &&
         levels[degeneracy] < levels[0] + 1e-8) {
    ++degeneracy;
  }
  Eigen::VectorXcd sector_state;
  if (degeneracy == 1) {
    sector_state = solver.eigenvectors().col(0);
  } else {
    // Resolve the degenerate level with the interacting Hamiltonian
    // restricted to it.
    const Eigen::MatrixXcd basis = solver.eigenvectors().leftCols(degeneracy);
    const Eigen::MatrixXcd interacting =
        dense_in_sector(build_hubbard(lat, p), indices);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_solver(
        basis.adjoint() * interacting * basis);
    sector_state = basis * inner_solver.eigenvectors().col(0);
  }

  const long dim = long{1} << lat.qubit_count();
  StateVector out{lat.qubit_count(), Eigen::VectorXcd::Zero(dim)};
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.amplitudes[indices[k]] = sector_state[static_cast<long>(k)];
  }
  out.amplitudes.normalize();
  for (long b = 0; b < dim; ++b) {
    if (std::abs(out.amplitudes[b]) > 1e-10) {
      out.amplitudes *= std::conj(out.amplitudes[b]) / std::abs(out.amplitudes[b]);
      break;
    }
  }
  return out;
}

AnsatzProgram build_hva(const LatticeSpec& lat, const HubbardParams& p,
                        int layers, std::optional<int> particles) {
  const int sector = particles ? *particles : infer_particle_sector(lat, p);
  return AnsatzProgram(prepare_initial_state(lat, p, sector),
                       hva_generators(lat), layers);
}

ParameterVector perturb_parameters(const ParameterVector& theta, double bound,
                                   std::uint64_t seed) {
  if (bound < 0) throw std::invalid_argument("perturb_parameters: negative bound");
  std::mt19937_64 rng(seed);
  ParameterVector out = theta;
  for (long i = 0; i < out.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    out[i] += (2.0 * u - 1.0) * bound;
  }
  return out;
}

}  // namespace tcvqite
