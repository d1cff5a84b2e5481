#include "maus/codes.hpp"

#include <cmath>
#include <stdexcept>

namespace maus {

CodeSpec maus_code(HalfInteger spin) {
  if (spin.twice() < 3) {
    throw std::invalid_argument(
        "MAUS code requires nuclear spin of at least 3/2");
  }
  if (!spin.is_half_odd()) {
    throw std::invalid_argument("MAUS code requires half-odd-integer spin");
  }
  const int dim = spin.dimension();
  const std::vector<Vector> ybasis = y_eigenbasis(spin);
  // ybasis[k] has eigenvalue m_y = I - k; |-(I-k)>_y is ybasis[2I - k].

  CodeSpec code{spin, Matrix::Zero(dim, 2), {}, {}};
  code.encode.col(0) = ybasis.front();
  code.encode.col(1) = ybasis.back();

  const int syndromes = (spin.twice() + 1) / 2;  // I + 1/2
  for (int k = 0; k < syndromes; ++k) {
    const Vector& up = ybasis[k];
    const Vector& down = ybasis[dim - 1 - k];
    Matrix proj = up * up.adjoint() + down * down.adjoint();
    // Recovery: swap the pair |±(I-k)>_y with |±I>_y, identity elsewhere.
    Matrix rec = Matrix::Identity(dim, dim);
    if (k > 0) {
      const Vector& top_up = ybasis[0];
      const Vector& top_down = ybasis[dim - 1];
      rec += top_up * up.adjoint() + up * top_up.adjoint() -
             up * up.adjoint() - top_up * top_up.adjoint();
      rec += top_down * down.adjoint() + down * top_down.adjoint() -
             down * down.adjoint() - top_down * top_down.adjoint();
    }
    code.syndrome_projectors.push_back(std::move(proj));
    code.recovery_unitaries.push_back(std::move(rec));
  }
  return code;
}

QuantumChannel ideal_recovery_channel(const CodeSpec& code) {
  std::vector<Matrix> kraus;
  kraus.reserve(code.syndrome_count());
  for (int k = 0; k < code.syndrome_count(); ++k) {
    kraus.push_back(code.recovery_unitaries[k] * code.syndrome_projectors[k]);
  }
  return QuantumChannel::from_kraus(kraus);
}

KnillLaflammeResult knill_laflamme_check(const CodeSpec& code,
                                         const std::vector<Matrix>& errors,
                                         double tol) {
  const Vector zero = code.encode.col(0);
  const Vector one = code.encode.col(1);
  double residual = 0.0;
  for (const Matrix& ea : errors) {
    for (const Matrix& eb : errors) {
      const Matrix prod = ea.adjoint() * eb;
      const Complex c00 = zero.dot(prod * zero);
      const Complex c11 = one.dot(prod * one);
      const Complex c01 = zero.dot(prod * one);
      const Complex c10 = one.dot(prod * zero);
      const Complex cab = 0.5 * (c00 + c11);
      residual = std::max(residual, std::abs(c00 - cab));
      residual = std::max(residual, std::abs(c11 - cab));
      residual = std::max(residual, std::abs(c01));
      residual = std::max(residual, std::abs(c10));
    }
  }
  return {residual < tol, residual};
}

QuantumChannel logical_channel(const CodeSpec& code,
                               const QuantumChannel& physical,
                               const QuantumChannel& recovery) {
  if (physical.dim_in() != code.physical_dim() ||
      recovery.dim_in() != physical.dim_out()) {
    throw std::invalid_argument("logical pipeline dimension mismatch");
  }
  const QuantumChannel enc = QuantumChannel::from_unitary(code.encode);
  if (recovery.dim_out() == 2) {
    return enc.then(physical).then(recovery);
  }
  if (recovery.dim_out() != code.physical_dim()) {
    throw std::invalid_argument("recovery output dimension mismatch");
  }
  const QuantumChannel dec =
      QuantumChannel::from_unitary(Matrix(code.encode.adjoint()));
  return enc.then(physical).then(recovery).then(dec);
}

double breakeven_baseline(double gamma_n, double t) {
  if (t < 0) throw std::invalid_argument("negative time");
  return 0.5 * (1.0 + std::exp(-0.5 * gamma_n * t));
}

double extremal_baseline(HalfInteger spin, double gamma_n, double t) {
  const double dm = spin.twice();  // Delta m between |I>_z and |-I>_z is 2I
  return 0.5 * (1.0 + std::exp(-0.5 * gamma_n * dm * dm * t));
}

double ideal_corrected_fidelity(const CodeSpec& code, double gamma_n_t) {
  const QuantumChannel noise =
      nuclear_dephasing_channel(code.spin, 1.0, gamma_n_t);
  const QuantumChannel rec = ideal_recovery_channel(code);
  return logical_channel(code, noise, rec).entanglement_fidelity();
}

double log_log_slope(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("need at least two points for a slope fit");
  }
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace maus
