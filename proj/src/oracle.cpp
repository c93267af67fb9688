#include "tcvqite/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace tcvqite {

namespace {

void check_cap(const OperatorSum& h) {
  if (h.qubit_count() > kDenseQubitCap) {
    throw std::invalid_argument("dense oracle: qubit cap exceeded");
  }
}

double sign_of(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const OperatorSum& h) {
  check_cap(h);
  const long dim = long{1} << h.qubit_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [letters, coeff] : h.terms()) {
    const CompiledPauli cp = compile_pauli(PauliTerm{coeff, letters});
    for (long col = 0; col < dim; ++col) {
      const long row = static_cast<long>(static_cast<std::uint64_t>(col) ^ cp.xmask);
      m(row, col) +=
          cp.prefactor * sign_of(static_cast<std::uint64_t>(col) & cp.sign_mask);
    }
  }
  return m;
}

std::vector<long> sector_indices(int qubit_count, int particles) {
  std::vector<long> out;
  const long dim = long{1} << qubit_count;
  for (long b = 0; b < dim; ++b) {
    if (std::popcount(static_cast<std::uint64_t>(b)) == particles) {
      out.push_back(b);
    }
  }
  return out;
}

Eigen::MatrixXcd dense_in_sector(const OperatorSum& h,
                                 const std::vector<long>& indices,
                                 double leakage_tol) {
  check_cap(h);
  const long dim = long{1} << h.qubit_count();
  std::vector<long> pos(dim, -1);
  for (std::size_t k = 0; k < indices.size(); ++k) pos[indices[k]] = static_cast<long>(k);

  std::vector<CompiledPauli> terms;
  terms.reserve(h.term_count());
  for (const auto& [letters, coeff] : h.terms()) {
    terms.push_back(compile_pauli(PauliTerm{coeff, letters}));
  }

  const long n = static_cast<long>(indices.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Complex> column(dim, Complex{0, 0});
  std::vector<char> marked(dim, 0);
  std::vector<long> touched;
  for (long k = 0; k < n; ++k) {
    const std::uint64_t col = static_cast<std::uint64_t>(indices[k]);
    touched.clear();
    for (const CompiledPauli& t : terms) {
      const long row = static_cast<long>(col ^ t.xmask);
      if (!marked[row]) {
        marked[row] = 1;
        touched.push_back(row);
      }
      column[row] += t.prefactor * sign_of(col & t.sign_mask);
    }
    for (const long row : touched) {
      if (pos[row] >= 0) {
        m(pos[row], k) = column[row];
      } else if (std::abs(column[row]) > leakage_tol) {
        throw NumericalFailure("dense_in_sector: operator couples the sector to its complement");
      }
      column[row] = Complex{0, 0};
      marked[row] = 0;
    }
  }
  return m;
}

std::vector<Complex> spectrum(const OperatorSum& h) {
  check_cap(h);
  const int n = h.qubit_count();
  const long dim = long{1} << n;
  std::vector<Complex> eigs;
  eigs.reserve(dim);

  // Group basis states by (up-mode occupation, down-mode occupation); up
  // modes are the even qubits under the fixed spin-orbital indexing.
  std::uint64_t up_mask = 0;
  for (int q = 0; q < n; q += 2) up_mask |= std::uint64_t{1} << q;
  const std::uint64_t dn_mask = ((n >= 64 ? ~std::uint64_t{0}
                                          : (std::uint64_t{1} << n) - 1)) &
                                ~up_mask;
  std::map<std::pair<int, int>, std::vector<long>> blocks;
  for (long b = 0; b < dim; ++b) {
    const std::uint64_t ub = static_cast<std::uint64_t>(b);
    blocks[{std::popcount(ub & up_mask), std::popcount(ub & dn_mask)}].push_back(b);
  }

  try {
    for (const auto& [key, indices] : blocks) {
      const Eigen::MatrixXcd block = dense_in_sector(h, indices, 1e-9);
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block, false);
      if (solver.info() != Eigen::Success) {
        throw NumericalFailure("spectrum: block eigensolver failed");
      }
      for (long i = 0; i < solver.eigenvalues().size(); ++i) {
        eigs.push_back(solver.eigenvalues()[i]);
      }
    }
  } catch (const NumericalFailure&) {
    // No conserved block structure; solve the full matrix.
    if (n > 10) throw;
    eigs.clear();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h), false);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("spectrum: dense eigensolver failed");
    }
    for (long i = 0; i < dim; ++i) eigs.push_back(solver.eigenvalues()[i]);
  }

  std::sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return eigs;
}

namespace {

struct GroundSide {
  double eigenvalue;
  Eigen::VectorXcd vector;
  double residual;
  Eigen::MatrixXcd subspace;
};

void phase_fix(Eigen::VectorXcd& v) {
  for (long b = 0; b < v.size(); ++b) {
    if (std::abs(v[b]) > 1e-10) {
      v *= std::conj(v[b]) / std::abs(v[b]);
      return;
    }
  }
}

// Shifted subspace iteration on (c I - H), c above the spectrum, with
// Rayleigh-Ritz extraction of the minimal-real-part eigenpair.
GroundSide ground_side(const OperatorSum& h, const std::vector<long>* sector) {
  const long dim = long{1} << h.qubit_count();
  const CompiledOperator op(h);
  const double shift = h.coefficient_l1_norm() + 1.0;
  const long block = std::min<long>(sector ? static_cast<long>(sector->size()) : dim, 6);
  if (block == 0) throw std::invalid_argument("ground_pair: empty sector");

  std::vector<char> in_sector;
  if (sector) {
    in_sector.assign(dim, 0);
    for (long b : *sector) in_sector[b] = 1;
  }
  const auto project = [&](Eigen::MatrixXcd& m) {
    if (!sector) return;
    for (long b = 0; b < dim; ++b) {
      if (!in_sector[b]) m.row(b).setZero();
    }
  };

  std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  };
  Eigen::MatrixXcd q(dim, block);
  for (long c = 0; c < block; ++c) {
    for (long b = 0; b < dim; ++b) q(b, c) = Complex{uniform(), uniform()};
  }
  project(q);

  constexpr int kMaxIters = 20000;
  constexpr double kResidualTol = 1e-10;
  constexpr double kDegenerateGap = 1e-8;

  Eigen::MatrixXcd hq(dim, block);
  GroundSide out;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    q = Eigen::HouseholderQR<Eigen::MatrixXcd>(q).householderQ() *
        Eigen::MatrixXcd::Identity(dim, block);
    for (long c = 0; c < block; ++c) {
      Eigen::VectorXcd col;
      op.apply(q.col(c), col);
      hq.col(c) = col;
    }

    if (iter % 5 == 4 || iter == kMaxIters - 1) {
      const Eigen::MatrixXcd ritz = q.adjoint() * hq;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(ritz, true);
      if (solver.info() != Eigen::Success) {
        throw NumericalFailure("ground_pair: Ritz eigensolver failed");
      }
      std::vector<long> order(block);
      for (long i = 0; i < block; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](long a, long b) {
        return solver.eigenvalues()[a].real() < solver.eigenvalues()[b].real();
      });
      const Complex lambda = solver.eigenvalues()[order[0]];
      const Eigen::VectorXcd u = (q * solver.eigenvectors().col(order[0])).normalized();
      Eigen::VectorXcd hu;
      op.apply(u, hu);
      const double residual = (hu - lambda * u).norm();
      if (residual < kResidualTol) {
        if (std::abs(lambda.imag()) > 1e-8) {
          throw NumericalFailure("ground_pair: converged Ritz value is not real");
        }
        // Collect the (possibly degenerate) ground cluster.
        std::vector<long> cluster;
        for (long i = 0; i < block; ++i) {
          if (solver.eigenvalues()[order[i]].real() <
              lambda.real() + kDegenerateGap) {
            cluster.push_back(order[i]);
          }
        }
        bool cluster_converged = true;
        Eigen::MatrixXcd vecs(dim, static_cast<long>(cluster.size()));
        for (std::size_t i = 0; i < cluster.size(); ++i) {
          const Eigen::VectorXcd w = (q * solver.eigenvectors().col(cluster[i])).normalized();
          Eigen::VectorXcd hw;
          op.apply(w, hw);
          if ((hw - solver.eigenvalues()[cluster[i]] * w).norm() > 1e-8) {
            cluster_converged = false;
            break;
          }
          vecs.col(static_cast<long>(i)) = w;
        }
        if (cluster_converged) {
          out.eigenvalue = lambda.real();
          out.vector = u;
          phase_fix(out.vector);
          out.residual = residual;
          out.subspace =
              Eigen::HouseholderQR<Eigen::MatrixXcd>(vecs).householderQ() *
              Eigen::MatrixXcd::Identity(dim, static_cast<long>(cluster.size()));
          return out;
        }
      }
    }
    q = shift * q - hq;
    project(q);
  }
  throw NumericalFailure("ground_pair: subspace iteration did not converge");
}

}  // namespace

SpectralResult ground_pair(const OperatorSum& h, std::optional<int> sector) {
  check_cap(h);
  std::vector<long> indices;
  if (sector) indices = sector_indices(h.qubit_count(), *sector);
  const std::vector<long>* sector_ptr = sector ? &indices : nullptr;

  GroundSide right = ground_side(h, sector_ptr);
  GroundSide left = ground_side(adjoint(h), sector_ptr);
  if (std::abs(right.eigenvalue - left.eigenvalue) > 1e-6) {
    throw NumericalFailure("ground_pair: left/right eigenvalues disagree");
  }

  SpectralResult out;
  out.eigenvalue = right.eigenvalue;
  out.right_vector = StateVector{h.qubit_count(), std::move(right.vector)};
  out.left_vector = StateVector{h.qubit_count(), std::move(left.vector)};
  out.right_residual = right.residual;
  out.left_residual = left.residual;
  out.degeneracy = static_cast<int>(right.subspace.cols());
  out.right_subspace = std::move(right.subspace);
  out.left_subspace = std::move(left.subspace);
  return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

double subspace_fidelity(const Eigen::MatrixXcd& basis, const StateVector& s) {
  return (basis.adjoint() * s.amplitudes).squaredNorm();
}

StateVector exact_imaginary_time(const OperatorSum& h, const StateVector& s,
                                 double tau) {
  check_cap(h);
  if (h.qubit_count() != s.qubit_count) {
    throw std::invalid_argument("exact_imaginary_time: qubit count mismatch");
  }
  if (tau < 0) throw std::invalid_argument("exact_imaginary_time: negative tau");
  const CompiledOperator op(h);
  Eigen::VectorXcd v = s.amplitudes.normalized();
  double remaining = tau;
  Eigen::VectorXcd term, hterm;
  while (remaining > 0) {
    const double step = std::min(remaining, 0.1);
    remaining -= step;
    term = v;
    Eigen::VectorXcd sum = v;
    for (int k = 1; k <= 500; ++k) {
      op.apply(term, hterm);
      term = (-step / k) * hterm;
      sum += term;
      if (term.norm() < 1e-16 * sum.norm()) break;
      if (k == 500) {
        throw NumericalFailure("exact_imaginary_time: Taylor series did not converge");
      }
    }
    v = sum.normalized();
  }
  return StateVector{s.qubit_count, std::move(v)};
}

}  // namespace tcvqite
