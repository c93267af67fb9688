#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <sstream>

#include "test_support.hpp"
#include "tcvqite/statevector.hpp"

using namespace tcvqite;
namespace ts = test_support;

namespace {

double vector_error(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("basis and zero states") {
  const StateVector z = StateVector::zero_state(3);
  CHECK(z.amplitudes.size() == 8);
  CHECK(z.amplitudes[0] == Complex{1.0, 0.0});
  CHECK(z.norm() == doctest::Approx(1.0));
  const StateVector b = StateVector::basis_state(3, 5);
  CHECK(b.amplitudes[5] == Complex{1.0, 0.0});
  CHECK(b.amplitudes.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("compiled Pauli application matches the Kronecker oracle") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "IXYZ";
  for (int trial = 0; trial < 30; ++trial) {
    std::string letters(4, 'I');
    for (char& c : letters) c = alphabet[rng() % 4];
    const PauliTerm term{Complex{1.25, -0.5}, letters};
    const Eigen::VectorXcd v = ts::random_vector(16, 100 + trial);
    Eigen::VectorXcd out(16);
    compile_pauli(term).apply(v, out);
    CHECK(vector_error(out, ts::dense_pauli_term(term) * v) < 1e-12);
  }
}

TEST_CASE("in-place rotation equals cos + i sin times the dense string") {
  const PauliTerm term{1.0, "XZYI"};
  const Eigen::MatrixXcd p = ts::dense_pauli_string(term.letters);
  const double angle = 0.731;
  const Eigen::MatrixXcd expected =
      std::cos(angle) * Eigen::MatrixXcd::Identity(16, 16) +
      Complex{0, 1} * std::sin(angle) * p;
  Eigen::VectorXcd v = ts::random_vector(16, 11);
  const Eigen::VectorXcd reference = expected * v;
  compile_pauli(term).rotate_inplace(angle, v);
  CHECK(vector_error(v, reference) < 1e-12);
}

TEST_CASE("rotation preserves the norm") {
  Eigen::VectorXcd v = ts::random_state(16, 12);
  compile_pauli(PauliTerm{1.0, "YZXZ"}).rotate_inplace(-1.234, v);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("insert_inplace multiplies by i P") {
  const PauliTerm term{1.0, "ZYX"};
  Eigen::VectorXcd v = ts::random_vector(8, 13);
  const Eigen::VectorXcd expected =
      Complex{0, 1} * ts::dense_pauli_string(term.letters) * v;
  compile_pauli(term).insert_inplace(v);
  CHECK(vector_error(v, expected) < 1e-12);
}

TEST_CASE("rotation rejects non-unit coefficients") {
  CHECK_THROWS_AS(apply_rotation(PauliTerm{Complex{2.0, 0.0}, "XX"}, 0.1,
                                 StateVector::zero_state(2)),
                  std::invalid_argument);
}

TEST_CASE("compiled operator application matches the dense sum") {
  OperatorSum sum(3);
  sum.add(PauliTerm{Complex{1.0, -0.5}, "XYZ"});
  sum.add(PauliTerm{Complex{0.25, 0.0}, "III"});
  sum.add(PauliTerm{Complex{0.0, 2.0}, "ZZX"});
  const CompiledOperator compiled(sum);
  const Eigen::MatrixXcd dense = ts::dense_operator_sum(sum);
  const Eigen::VectorXcd v = ts::random_vector(8, 21);
  Eigen::VectorXcd out;
  compiled.apply(v, out);
  CHECK(vector_error(out, dense * v) < 1e-12);
  CHECK(std::abs(compiled.expectation(v) - Complex(v.dot(dense * v))) < 1e-12);
}

TEST_CASE("apply_sum and expectation agree with the dense oracle") {
  OperatorSum sum(2);
  sum.add(PauliTerm{Complex{0.5, 0.0}, "XI"});
  sum.add(PauliTerm{Complex{-1.0, 0.0}, "ZZ"});
  const StateVector s{2, ts::random_state(4, 31)};
  const Eigen::MatrixXcd dense = ts::dense_operator_sum(sum);
  CHECK(vector_error(apply_sum(sum, s).amplitudes, dense * s.amplitudes) <
        1e-12);
  CHECK(std::abs(expectation(sum, s) -
                 Complex(s.amplitudes.dot(dense * s.amplitudes))) < 1e-12);
}

TEST_CASE("inner conjugates its left argument") {
  const StateVector a{1, (Eigen::VectorXcd(2) << Complex{0, 1}, 0).finished()};
  const StateVector b{1, (Eigen::VectorXcd(2) << 1, 0).finished()};
  CHECK(inner(a, b) == Complex{0, -1});
}

TEST_CASE("binary round trip preserves the state exactly") {
  const StateVector s{3, ts::random_state(8, 99)};
  std::stringstream buffer;
  write_statevector(buffer, s);
  const StateVector back = read_statevector(buffer);
  CHECK(back.qubit_count == 3);
  CHECK(vector_error(back.amplitudes, s.amplitudes) == 0.0);
}

TEST_CASE("binary layout: LE count then interleaved little-endian doubles") {
  StateVector s{1, (Eigen::VectorXcd(2) << Complex{1.0, 0.0},
                    Complex{0.0, -2.0}).finished()};
  std::stringstream buffer;
  write_statevector(buffer, s);
  const std::string bytes = buffer.str();
  REQUIRE(bytes.size() == 8 + 4 * 8);
  const unsigned char expected_header[8] = {1, 0, 0, 0, 0, 0, 0, 0};
  CHECK(std::memcmp(bytes.data(), expected_header, 8) == 0);
  double values[4];
  std::memcpy(values, bytes.data() + 8, 32);
  CHECK(values[0] == 1.0);   // re amplitude 0
  CHECK(values[1] == 0.0);   // im amplitude 0
  CHECK(values[2] == 0.0);   // re amplitude 1
  CHECK(values[3] == -2.0);  // im amplitude 1
}

TEST_CASE("truncated binary input is rejected") {
  std::stringstream buffer;
  write_statevector(buffer, StateVector::zero_state(2));
  std::stringstream truncated(buffer.str().substr(0, 20));
  CHECK_THROWS(read_statevector(truncated));
}
