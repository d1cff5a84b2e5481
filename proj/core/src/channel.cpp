#include "maus/channel.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace maus {

Matrix vectorize(const Matrix& rho) {
  return Eigen::Map<const Matrix>(rho.data(), rho.size(), 1);
}

Matrix unvectorize(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

QuantumChannel QuantumChannel::from_superop(Matrix superop, int dim_in,
                                            int dim_out, bool subnormalized) {
  if (superop.rows() != dim_out * dim_out ||
      superop.cols() != dim_in * dim_in) {
    throw std::invalid_argument("superoperator shape mismatch");
  }
  return QuantumChannel(std::move(superop), dim_in, dim_out, subnormalized);
}

QuantumChannel QuantumChannel::identity(int dim) {
  return QuantumChannel(Matrix::Identity(dim * dim, dim * dim), dim, dim,
                        false);
}

QuantumChannel QuantumChannel::from_unitary(const Matrix& u) {
  const int dout = static_cast<int>(u.rows());
  const int din = static_cast<int>(u.cols());
  // vec(U rho U^dag) = (conj(U) ⊗ U) vec(rho)
  Matrix s = kron(u.conjugate(), u);
  return QuantumChannel(std::move(s), din, dout, false);
}

QuantumChannel QuantumChannel::from_kraus(const std::vector<Matrix>& kraus,
                                          bool subnormalized) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  const int dout = static_cast<int>(kraus.front().rows());
  const int din = static_cast<int>(kraus.front().cols());
  Matrix s = Matrix::Zero(dout * dout, din * din);
  for (const Matrix& k : kraus) {
    s += kron(k.conjugate(), k);
  }
  return QuantumChannel(std::move(s), din, dout, subnormalized);
}

QuantumChannel QuantumChannel::branch_projection(const Matrix& projector) {
  const int d = static_cast<int>(projector.rows());
  Matrix s = kron(projector.conjugate(), projector);
  return QuantumChannel(std::move(s), d, d, true);
}

QuantumChannel QuantumChannel::from_choi(const Matrix& choi, int dim_in,
                                         int dim_out, bool subnormalized) {
  Matrix s = Matrix::Zero(dim_out * dim_out, dim_in * dim_in);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      for (int a = 0; a < dim_out; ++a) {
        for (int b = 0; b < dim_out; ++b) {
          s(b * dim_out + a, j * dim_in + i) =
              choi(a * dim_in + i, b * dim_in + j);
        }
      }
    }
  }
  return QuantumChannel(std::move(s), dim_in, dim_out, subnormalized);
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_) {
    throw std::invalid_argument("state dimension mismatch");
  }
  Vector v = superop_ * vectorize(rho);
  return unvectorize(v, dim_out_, dim_out_);
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
  if (next.dim_in_ != dim_out_) {
    throw std::invalid_argument("channel composition dimension mismatch");
  }
  return QuantumChannel(next.superop_ * superop_, dim_in_, next.dim_out_,
                        subnormalized_ || next.subnormalized_);
}

QuantumChannel QuantumChannel::operator+(const QuantumChannel& other) const {
  if (other.dim_in_ != dim_in_ || other.dim_out_ != dim_out_) {
    throw std::invalid_argument("channel sum dimension mismatch");
  }
  return QuantumChannel(superop_ + other.superop_, dim_in_, dim_out_,
                        subnormalized_ || other.subnormalized_);
}

Matrix QuantumChannel::choi() const {
  Matrix c = Matrix::Zero(dim_out_ * dim_in_, dim_out_ * dim_in_);
  for (int i = 0; i < dim_in_; ++i) {
    for (int j = 0; j < dim_in_; ++j) {
      // E(|i><j|) is column j*din+i of the superoperator, unvectorized.
      for (int a = 0; a < dim_out_; ++a) {
        for (int b = 0; b < dim_out_; ++b) {
          c(a * dim_in_ + i, b * dim_in_ + j) =
              superop_(b * dim_out_ + a, j * dim_in_ + i);
        }
      }
    }
  }
  return c;
}

std::vector<Matrix> QuantumChannel::kraus(double threshold) const {
  const Matrix c = choi();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix(0.5 * (c + c.adjoint())));
  std::vector<Matrix> ops;
  for (int k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda <= threshold) continue;
    const Vector v = solver.eigenvectors().col(k);
    Matrix op(dim_out_, dim_in_);
    for (int a = 0; a < dim_out_; ++a) {
      for (int i = 0; i < dim_in_; ++i) {
        op(a, i) = std::sqrt(lambda) * v(a * dim_in_ + i);
      }
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

double QuantumChannel::trace_preserving_residual() const {
  const Matrix c = choi();
  Matrix tr_out = Matrix::Zero(dim_in_, dim_in_);
  for (int i = 0; i < dim_in_; ++i) {
    for (int j = 0; j < dim_in_; ++j) {
      for (int a = 0; a < dim_out_; ++a) {
        tr_out(i, j) += c(a * dim_in_ + i, a * dim_in_ + j);
      }
    }
  }
  const Matrix id = Matrix::Identity(dim_in_, dim_in_);
  if (!subnormalized_) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        Matrix(0.5 * (tr_out - id + (tr_out - id).adjoint())));
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  // Sub-normalized: partial trace must not exceed the identity.
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      Matrix(0.5 * (tr_out - id + (tr_out - id).adjoint())));
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

double QuantumChannel::choi_min_eigenvalue() const {
  const Matrix c = choi();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix(0.5 * (c + c.adjoint())));
  return solver.eigenvalues().minCoeff();
}

bool QuantumChannel::is_cptp(double tp_tol, double psd_tol) const {
  return trace_preserving_residual() <= tp_tol &&
         choi_min_eigenvalue() >= -psd_tol;
}

double QuantumChannel::entanglement_fidelity() const {
  if (dim_in_ != dim_out_) {
    throw std::invalid_argument(
        "entanglement fidelity requires equal input/output dimension");
  }
  const double d = dim_in_;
  return superop_.trace().real() / (d * d);
}

double average_gate_fidelity(const QuantumChannel& logical) {
  const double d = logical.dim_in();
  const double fe = logical.entanglement_fidelity();
  return (d * fe + 1.0) / (d + 1.0);
}

}  // namespace maus
