#ifndef MAUS_SPIN_HPP
#define MAUS_SPIN_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace maus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Half-integer spin magnitude or projection, stored as twice its value so
/// that arithmetic on projections stays exact.
class HalfInteger {
 public:
  explicit constexpr HalfInteger(int twice_value) : twice_(twice_value) {}

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }

  /// Hilbert-space dimension 2I+1 when this is a spin magnitude.
  constexpr int dimension() const { return twice_ + 1; }

  constexpr bool is_half_odd() const { return (twice_ % 2 + 2) % 2 == 1; }

  friend constexpr bool operator==(HalfInteger a, HalfInteger b) {
    return a.twice_ == b.twice_;
  }
  friend constexpr bool operator<(HalfInteger a, HalfInteger b) {
    return a.twice_ < b.twice_;
  }

 private:
  int twice_;
};

struct SpinOps {
  Matrix x;
  Matrix y;
  Matrix z;
};

/// Standard angular-momentum matrices in the I_z eigenbasis ordered by
/// descending projection m = I, I-1, ..., -I.
SpinOps angular_momentum_ops(HalfInteger spin);

/// Projection value m for basis index k (descending ordering).
inline double projection_of_index(HalfInteger spin, int index) {
  return spin.value() - index;
}

/// Orthonormal eigenvectors of I_y ordered by descending eigenvalue, global
/// phase fixed so that the first nonzero I_z-basis component is real positive.
std::vector<Vector> y_eigenbasis(HalfInteger spin);

/// exp(-i * angle * axis) for a Hermitian axis, via eigendecomposition.
Matrix rotation(const Matrix& axis, double angle);

/// Kronecker product with the nucleus as the left factor.
Matrix compose_systems(const Matrix& nuclear_op, const Matrix& electron_op);

Matrix kron(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = 1e-12);
bool is_unitary(const Matrix& m, double tol = 1e-10);

/// Pauli matrices acting on a two-level subspace (p, q) of a dim-dimensional
/// space; identity elsewhere is NOT included (these are traceless embeddings).
Matrix sigma_x_pair(int dim, int p, int q);
Matrix sigma_y_pair(int dim, int p, int q);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace maus

#endif  // MAUS_SPIN_HPP
