#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tcvqite/evolution.hpp"
#include "tcvqite/model.hpp"
#include "tcvqite/oracle.hpp"

using namespace tcvqite;
namespace ts = test_support;

namespace {

constexpr double kDimerGround = -0.8284271247461903;  // 1x2, t=1, U=4, N=2

AnsatzProgram dimer_ansatz(int layers) {
  return build_hva(LatticeSpec{1, 2}, HubbardParams{1.0, 4.0, -0.5}, layers, 2);
}

OperatorSum dimer_tc() {
  return build_tc_hubbard(LatticeSpec{1, 2}, HubbardParams{1.0, 4.0, -0.5});
}

ParameterVector test_theta(int count) {
  ParameterVector theta(count);
  for (int i = 0; i < count; ++i) theta[i] = 0.2 * std::cos(2.3 * i) + 0.05;
  return theta;
}

/// A and C assembled from scratch with test-side central finite differences
/// and dense matrices.
McLachlanSystem oracle_system(const AnsatzProgram& ansatz,
                              const ParameterVector& theta,
                              const OperatorSum& h) {
  const int np = ansatz.parameter_count();
  const long dim = ansatz.reference_state().amplitudes.size();
  Eigen::MatrixXcd tangents(dim, np);
  const double eps = 1e-6;
  for (int i = 0; i < np; ++i) {
    ParameterVector plus = theta, minus = theta;
    plus[i] += eps;
    minus[i] -= eps;
    tangents.col(i) =
        (ansatz.evaluate(plus).amplitudes - ansatz.evaluate(minus).amplitudes) /
        (2 * eps);
  }
  const Eigen::MatrixXcd hd = ts::dense_operator_sum(h);
  const Eigen::VectorXcd state = ansatz.evaluate(theta).amplitudes;
  McLachlanSystem sys;
  sys.a = (tangents.adjoint() * tangents).real();
  sys.c = (tangents.adjoint() * (hd * state)).real();
  sys.energy = state.dot(hd * state);
  return sys;
}

}  // namespace

TEST_CASE("config validation rejects bad values") {
  EvolutionConfig cfg;
  cfg.dtau = -0.01;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = EvolutionConfig{};
  cfg.record_interval = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_NOTHROW(EvolutionConfig{}.validate());
}

TEST_CASE("assembled A and C match the finite-difference dense oracle") {
  const AnsatzProgram ansatz = dimer_ansatz(2);
  const OperatorSum h = dimer_tc();
  const ParameterVector theta = test_theta(ansatz.parameter_count());
  const McLachlanSystem got = assemble(ansatz, theta, CompiledOperator(h),
                                       TangentMode::kAnalytic, 1e-10);
  const McLachlanSystem expected = oracle_system(ansatz, theta, h);
  CHECK((got.a - expected.a).cwiseAbs().maxCoeff() < 1e-7);
  CHECK((got.c - expected.c).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(std::abs(got.energy - expected.energy) < 1e-10);
}

TEST_CASE("analytic and forward-difference assembly agree") {
  const AnsatzProgram ansatz = dimer_ansatz(1);
  const OperatorSum h = dimer_tc();
  const CompiledOperator compiled(h);
  const ParameterVector theta = test_theta(ansatz.parameter_count());
  const McLachlanSystem analytic =
      assemble(ansatz, theta, compiled, TangentMode::kAnalytic, 1e-10);
  const McLachlanSystem fd =
      assemble(ansatz, theta, compiled, TangentMode::kFiniteDifference, 1e-10);
  CHECK((analytic.a - fd.a).cwiseAbs().maxCoeff() < 1e-4);
  CHECK((analytic.c - fd.c).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("A is symmetric positive semidefinite") {
  const AnsatzProgram ansatz = dimer_ansatz(2);
  const ParameterVector theta = test_theta(ansatz.parameter_count());
  const McLachlanSystem sys = assemble(
      ansatz, theta, CompiledOperator(dimer_tc()), TangentMode::kAnalytic, 1e-10);
  CHECK((sys.a - sys.a.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sys.a,
                                                        Eigen::EigenvaluesOnly);
  CHECK(solver.eigenvalues()[0] > -1e-10);
}

TEST_CASE("solve_update applies the cutoff pseudoinverse") {
  McLachlanSystem sys;
  sys.a = Eigen::MatrixXd::Zero(3, 3);
  sys.a(0, 0) = 2.0;
  sys.a(1, 1) = 0.5;
  sys.a(2, 2) = 1e-9;  // below cutoff: projected out
  sys.c = Eigen::VectorXd::Ones(3);
  const UpdateResult update = solve_update(sys, 1e-6);
  CHECK(update.rank == 2);
  CHECK(update.theta_dot[0] == doctest::Approx(-0.5));
  CHECK(update.theta_dot[1] == doctest::Approx(-2.0));
  CHECK(update.theta_dot[2] == doctest::Approx(0.0));
}

TEST_CASE("solve_update symmetrizes a slightly asymmetric A") {
  McLachlanSystem sys;
  sys.a = Eigen::MatrixXd::Identity(2, 2);
  sys.a(0, 1) = 1e-13;  // asymmetric noise
  sys.c = Eigen::VectorXd::Ones(2);
  const UpdateResult update = solve_update(sys, 1e-6);
  CHECK(update.theta_dot[0] == doctest::Approx(-1.0));
}

TEST_CASE("euler_step is theta + dtau * theta_dot") {
  ParameterVector theta(2);
  theta << 1.0, -2.0;
  Eigen::VectorXd dot(2);
  dot << 0.5, 1.0;
  const ParameterVector next = euler_step(theta, dot, 0.01);
  CHECK(next[0] == doctest::Approx(1.005));
  CHECK(next[1] == doctest::Approx(-1.99));
}

TEST_CASE("imaginary-time evolution reaches the dimer TC ground state") {
  const AnsatzProgram ansatz = dimer_ansatz(2);
  const OperatorSum h = dimer_tc();
  const SpectralResult g = ground_pair(h, 2);
  const FidelityReferences refs{g.right_vector, g.left_vector};
  EvolutionConfig cfg;
  cfg.steps = 300;
  const ParameterVector theta0 = perturb_parameters(
      ParameterVector::Zero(ansatz.parameter_count()), 0.0628, 3);
  const EvolutionTrace trace = evolve(ansatz, theta0, h, cfg, &refs);
  REQUIRE_FALSE(trace.failed);
  const TraceRecord& last = trace.records.back();
  CHECK(std::abs(last.e_real - kDimerGround) < 1e-3);
  CHECK(std::abs(last.e_imag) < 1e-4);
  CHECK(last.fid_right.value() > 0.999);
  // Im E decays from its early-time value.
  CHECK(std::abs(last.e_imag) < std::abs(trace.records[5].e_imag));
}

TEST_CASE("Hermitian-case energy is monotone non-increasing") {
  const AnsatzProgram ansatz =
      build_hva(LatticeSpec{1, 2}, HubbardParams{1.0, 4.0, 0.0}, 2, 2);
  const OperatorSum h = build_hubbard(LatticeSpec{1, 2}, HubbardParams{1.0, 4.0, 0.0});
  EvolutionConfig cfg;
  cfg.steps = 200;
  cfg.record_interval = 1;
  const ParameterVector theta0 = perturb_parameters(
      ParameterVector::Zero(ansatz.parameter_count()), 0.0628, 11);
  const EvolutionTrace trace = evolve(ansatz, theta0, h, cfg, nullptr);
  REQUIRE_FALSE(trace.failed);
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    CHECK(trace.records[k].e_real <= trace.records[k - 1].e_real + 1e-6);
    CHECK(std::abs(trace.records[k].e_imag) < 1e-10);
  }
}

TEST_CASE("gradient descent lowers the energy but stalls above the minimum") {
  const AnsatzProgram ansatz = dimer_ansatz(2);
  const OperatorSum h = dimer_tc();
  EvolutionConfig cfg;
  cfg.steps = 300;
  const ParameterVector theta0 = perturb_parameters(
      ParameterVector::Zero(ansatz.parameter_count()), 0.0628, 3);
  const EvolutionTrace trace = gradient_descent(ansatz, theta0, h, cfg, nullptr);
  REQUIRE_FALSE(trace.failed);
  CHECK(trace.records.back().e_real < trace.records.front().e_real);
}

TEST_CASE("steps=0 yields a single record at tau 0") {
  const AnsatzProgram ansatz = dimer_ansatz(1);
  EvolutionConfig cfg;
  cfg.steps = 0;
  const EvolutionTrace trace =
      evolve(ansatz, ParameterVector::Zero(ansatz.parameter_count()),
             dimer_tc(), cfg, nullptr);
  REQUIRE(trace.records.size() == 1);
  CHECK(trace.records[0].tau == 0.0);
}

TEST_CASE("trace CSV format: header, one line per record, empty optionals") {
  EvolutionTrace trace;
  TraceRecord rec;
  rec.tau = 0.5;
  rec.e_real = -1.25;
  rec.e_imag = 0.001;
  rec.grad_norm = 0.25;
  rec.a_rank = 7;
  trace.records.push_back(rec);
  const std::string csv = to_csv(trace);
  CHECK(csv ==
        "tau,e_real,e_imag,fid_right,fid_left,grad_norm,a_rank\n"
        "5.000000000000e-01,-1.250000000000e+00,1.000000000000e-03,,,"
        "2.500000000000e-01,7\n");
}

TEST_CASE("record interval controls trace density") {
  const AnsatzProgram ansatz = dimer_ansatz(1);
  EvolutionConfig cfg;
  cfg.steps = 20;
  cfg.record_interval = 5;
  const EvolutionTrace trace =
      evolve(ansatz, ParameterVector::Zero(ansatz.parameter_count()),
             dimer_tc(), cfg, nullptr);
  REQUIRE(trace.records.size() == 5);  // steps 0, 5, 10, 15, 20
  CHECK(trace.records.back().tau == doctest::Approx(0.2));
}
