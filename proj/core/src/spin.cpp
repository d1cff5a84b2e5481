#include "maus/spin.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace maus {

SpinOps angular_momentum_ops(HalfInteger spin) {
  if (spin.twice() < 1) {
    throw std::invalid_argument("spin magnitude must be at least 1/2");
  }
  const int dim = spin.dimension();
  const double I = spin.value();

  Matrix plus = Matrix::Zero(dim, dim);
  Matrix z = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = projection_of_index(spin, k);
    z(k, k) = m;
    if (k + 1 < dim) {
      // I+ |m-1> = sqrt(I(I+1) - m(m-1)) |m>, descending ordering.
      plus(k, k + 1) = std::sqrt(I * (I + 1.0) - m * (m - 1.0));
    }
  }
  const Matrix minus = plus.adjoint();

  SpinOps ops;
  ops.x = 0.5 * (plus + minus);
  ops.y = Complex(0, -0.5) * (plus - minus);
  ops.z = z;
  return ops;
}

std::vector<Vector> y_eigenbasis(HalfInteger spin) {
  const SpinOps ops = angular_momentum_ops(spin);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(ops.y);
  const int dim = spin.dimension();

  // Solver returns ascending eigenvalues; reverse to descending m_y.
  std::vector<Vector> basis(dim);
  for (int k = 0; k < dim; ++k) {
    Vector v = solver.eigenvectors().col(dim - 1 - k);
    int first = 0;
    while (first < dim && std::abs(v(first)) < 1e-9) ++first;
    const Complex lead = v(first);
    v *= std::conj(lead) / std::abs(lead);
    basis[k] = v;
  }
  return basis;
}

Matrix rotation(const Matrix& axis, double angle) {
  if (!is_hermitian(axis, 1e-10)) {
    throw std::invalid_argument("rotation axis must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(axis);
  const auto& evals = solver.eigenvalues();
  const Matrix& evecs = solver.eigenvectors();
  Vector phases(evals.size());
  for (int k = 0; k < evals.size(); ++k) {
    phases(k) = std::exp(Complex(0, -angle * evals(k)));
  }
  return evecs * phases.asDiagonal() * evecs.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix compose_systems(const Matrix& nuclear_op, const Matrix& electron_op) {
  if (nuclear_op.rows() != nuclear_op.cols() ||
      electron_op.rows() != electron_op.cols()) {
    throw std::invalid_argument("compose_systems requires square operators");
  }
  return kron(nuclear_op, electron_op);
}

bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  const Matrix gram = m.adjoint() * m;
  const Matrix id = Matrix::Identity(m.cols(), m.cols());
  return (gram - id).norm() <= tol;
}

Matrix sigma_x_pair(int dim, int p, int q) {
  Matrix m = Matrix::Zero(dim, dim);
  m(p, q) = 1.0;
  m(q, p) = 1.0;
  return m;
}

Matrix sigma_y_pair(int dim, int p, int q) {
  Matrix m = Matrix::Zero(dim, dim);
  m(p, q) = Complex(0, -1);
  m(q, p) = Complex(0, 1);
  return m;
}

Matrix pauli_x() { return sigma_x_pair(2, 0, 1); }
Matrix pauli_y() { return sigma_y_pair(2, 0, 1); }

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace maus
