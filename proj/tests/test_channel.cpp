#include <doctest.h>

#include <cmath>
#include <random>

#include "maus/channel.hpp"

using namespace maus;

namespace {

std::mt19937 rng(12345);

Matrix random_matrix(int rows, int cols) {
  std::normal_distribution<double> dist;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  }
  return m;
}

Matrix random_unitary(int dim) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, dim));
  Matrix q = qr.householderQ();
  return q;
}

Matrix random_density(int dim) {
  const Matrix a = random_matrix(dim, dim);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace

TEST_CASE("identity channel") {
  const auto id = QuantumChannel::identity(3);
  CHECK(id.entanglement_fidelity() == doctest::Approx(1.0));
  CHECK(id.is_cptp());
  const Matrix rho = random_density(3);
  CHECK((id.apply(rho) - rho).norm() < 1e-14);
}

TEST_CASE("unitary channel conjugates in the column-stacking convention") {
  for (int dim : {2, 4, 6}) {
    const Matrix u = random_unitary(dim);
    const auto ch = QuantumChannel::from_unitary(u);
    const Matrix rho = random_density(dim);
    CHECK((ch.apply(rho) - u * rho * u.adjoint()).norm() < 1e-12);
    CHECK(ch.is_cptp());
    CHECK(ch.trace_preserving_residual() < 1e-12);
    const double expected =
        std::norm(u.trace()) / static_cast<double>(dim * dim);
    CHECK(ch.entanglement_fidelity() == doctest::Approx(expected));
  }
}

TEST_CASE("isometry channels are accepted") {
  Matrix v = Matrix::Zero(4, 2);
  v(0, 0) = 1.0;
  v(3, 1) = 1.0;
  const auto ch = QuantumChannel::from_unitary(v);
  CHECK(ch.dim_in() == 2);
  CHECK(ch.dim_out() == 4);
  CHECK(ch.is_cptp());
}

TEST_CASE("Kraus and Choi round trips") {
  const Matrix u = random_unitary(3);
  Matrix k0 = 0.6 * u;
  Matrix k1 = std::sqrt(1.0 - 0.36) * random_unitary(3);
  const auto ch = QuantumChannel::from_kraus({k0, k1});
  CHECK(ch.is_cptp());

  const auto back = QuantumChannel::from_choi(ch.choi(), 3, 3);
  CHECK((back.superop() - ch.superop()).norm() < 1e-10);

  const auto kraus = ch.kraus();
  const Matrix rho = random_density(3);
  Matrix out = Matrix::Zero(3, 3);
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  CHECK((out - ch.apply(rho)).norm() < 1e-10);
}

TEST_CASE("composition applies left channel first") {
  const Matrix u = random_unitary(2);
  const Matrix v = random_unitary(2);
  const auto uv = QuantumChannel::from_unitary(u).then(
      QuantumChannel::from_unitary(v));
  const Matrix rho = random_density(2);
  CHECK((uv.apply(rho) - v * u * rho * u.adjoint() * v.adjoint()).norm() <
        1e-12);
}

TEST_CASE("measurement branches are sub-normalized and sum to a channel") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  const auto b0 = QuantumChannel::branch_projection(p0);
  const auto b1 = QuantumChannel::branch_projection(p1);
  CHECK(b0.subnormalized());
  // valid branch: trace non-increasing, so the residual is zero, but it only
  // keeps half the total probability
  CHECK(b0.trace_preserving_residual() < 1e-14);
  CHECK(b0.choi().trace().real() == doctest::Approx(1.0));
  const auto total = b0 + b1;
  CHECK(total.trace_preserving_residual() < 1e-14);
}

TEST_CASE("qubit dephasing fidelity is (1 + lambda) / 2") {
  const double lambda = 0.73;
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 1) = s(2, 2) = lambda;
  const auto ch = QuantumChannel::from_superop(s, 2, 2);
  CHECK(ch.entanglement_fidelity() == doctest::Approx(0.5 * (1 + lambda)));
  CHECK(average_gate_fidelity(ch) ==
        doctest::Approx((2 * 0.5 * (1 + lambda) + 1.0) / 3.0));
}

TEST_CASE("Choi positivity detects non-CP maps") {
  // transpose map on a qubit: positive but not completely positive
  Matrix s = Matrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 2) = s(2, 1) = 1.0;
  const auto transpose = QuantumChannel::from_superop(s, 2, 2);
  CHECK(transpose.choi_min_eigenvalue() < -0.5);
  CHECK(!transpose.is_cptp());
}

TEST_CASE("entanglement fidelity requires equal dimensions") {
  Matrix v = Matrix::Zero(4, 2);
  v(0, 0) = v(1, 1) = 1.0;
  CHECK_THROWS(QuantumChannel::from_unitary(v).entanglement_fidelity());
}

TEST_CASE("vectorize round trip") {
  const Matrix rho = random_density(3);
  CHECK((unvectorize(Vector(vectorize(rho)), 3, 3) - rho).norm() < 1e-15);
}
