#include "maus/dynamics.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace maus {

Matrix dissipator(const Matrix& lindblad_op) {
  const int d = static_cast<int>(lindblad_op.rows());
  const Matrix id = Matrix::Identity(d, d);
  const Matrix ldl = lindblad_op.adjoint() * lindblad_op;
  return kron(lindblad_op.conjugate(), lindblad_op) -
         0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
}

Matrix dephasing_generator(HalfInteger spin, const NoiseParams& noise) {
  if (noise.gamma_n < 0 || noise.gamma_e < 0) {
    throw std::invalid_argument("dephasing rates must be non-negative");
  }
  const SpinOps ops = angular_momentum_ops(spin);
  const Matrix iz = compose_systems(ops.z, Matrix::Identity(2, 2));
  const Matrix sz =
      compose_systems(Matrix::Identity(spin.dimension(), spin.dimension()),
                      pauli_z());
  return noise.gamma_n * dissipator(iz) + 0.5 * noise.gamma_e * dissipator(sz);
}

Matrix nuclear_dephasing_generator(HalfInteger spin, double gamma_n) {
  if (gamma_n < 0) {
    throw std::invalid_argument("dephasing rate must be non-negative");
  }
  const SpinOps ops = angular_momentum_ops(spin);
  return gamma_n * dissipator(ops.z);
}

namespace {

QuantumChannel diagonal_dephasing_channel(const std::vector<double>& levels,
                                          double rate, double t) {
  const int d = static_cast<int>(levels.size());
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double dm = levels[r] - levels[c];
      s(c * d + r, c * d + r) = std::exp(-0.5 * rate * dm * dm * t);
    }
  }
  return QuantumChannel::from_superop(std::move(s), d, d);
}

}  // namespace

QuantumChannel free_evolution_channel(HalfInteger spin,
                                      const NoiseParams& noise, double t) {
  if (t < 0) throw std::invalid_argument("negative evolution time");
  const int dn = spin.dimension();
  const int d = 2 * dn;
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double m_r = projection_of_index(spin, r / 2);
      const double m_c = projection_of_index(spin, c / 2);
      const double sig_r = (r % 2 == 0) ? 1.0 : -1.0;
      const double sig_c = (c % 2 == 0) ? 1.0 : -1.0;
      const double dm = m_r - m_c;
      // (Gamma_e / 2) D[sigma_z] decays opposite-electron coherences at
      // exactly Gamma_e: (sig_r - sig_c)^2 / 4 is 1 when they differ.
      const double rate = 0.5 * noise.gamma_n * dm * dm +
                          0.25 * noise.gamma_e * (sig_r - sig_c) *
                              (sig_r - sig_c);
      s(c * d + r, c * d + r) = std::exp(-rate * t);
    }
  }
  return QuantumChannel::from_superop(std::move(s), d, d);
}

QuantumChannel nuclear_dephasing_channel(HalfInteger spin, double gamma_n,
                                         double t) {
  if (t < 0) throw std::invalid_argument("negative evolution time");
  std::vector<double> levels(spin.dimension());
  for (int k = 0; k < spin.dimension(); ++k) {
    levels[k] = projection_of_index(spin, k);
  }
  return diagonal_dephasing_channel(levels, gamma_n, t);
}

Matrix rwa_pulse_hamiltonian(int dim,
                             const std::vector<std::pair<int, int>>& pairs,
                             double phi, double omega) {
  std::set<int> used;
  for (const auto& [p, q] : pairs) {
    if (p < 0 || q < 0 || p >= dim || q >= dim || p == q) {
      throw std::invalid_argument("invalid level pair");
    }
    if (!used.insert(p).second || !used.insert(q).second) {
      throw std::invalid_argument("parallel drive level pairs must be disjoint");
    }
  }
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& [p, q] : pairs) {
    h += sigma_x_pair(dim, p, q) * std::cos(phi) +
         sigma_y_pair(dim, p, q) * std::sin(phi);
  }
  return -0.5 * omega * h;
}

Matrix liouvillian(const Matrix& hamiltonian, const Matrix& generator) {
  const int d = static_cast<int>(hamiltonian.rows());
  const Matrix id = Matrix::Identity(d, d);
  const Matrix commutator_part =
      Complex(0, -1) * (kron(id, hamiltonian) -
                        kron(hamiltonian.transpose(), id));
  if (generator.size() == 0) return commutator_part;
  if (generator.rows() != d * d) {
    throw std::invalid_argument("Hamiltonian/generator dimension mismatch");
  }
  return commutator_part + generator;
}

QuantumChannel channel_of_segment(const Matrix& hamiltonian,
                                  const Matrix& generator, double duration) {
  if (duration < 0) throw std::invalid_argument("negative segment duration");
  const int d = static_cast<int>(hamiltonian.rows());
  const Matrix l = liouvillian(hamiltonian, generator);
  Matrix s = (l * duration).exp();
  return QuantumChannel::from_superop(std::move(s), d, d);
}

Matrix evolve_piecewise(const Matrix& hamiltonian, const Matrix& generator,
                        const Matrix& rho, double duration) {
  return channel_of_segment(hamiltonian, generator, duration).apply(rho);
}

Matrix evolve_rk4(const Matrix& hamiltonian, const Matrix& generator,
                  const Matrix& rho, double duration) {
  const Matrix l = liouvillian(hamiltonian, generator);
  const double scale = hamiltonian.norm() + l.norm();
  const double max_step = 1e-3 / std::max(scale, 1e-12);
  const int steps =
      std::max(1, static_cast<int>(std::ceil(duration / max_step)));
  const double h = duration / steps;

  Vector v = vectorize(rho);
  for (int s = 0; s < steps; ++s) {
    const Vector k1 = l * v;
    const Vector k2 = l * (v + 0.5 * h * k1);
    const Vector k3 = l * (v + 0.5 * h * k2);
    const Vector k4 = l * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const int d = static_cast<int>(rho.rows());
  return unvectorize(v, d, d);
}

namespace {

// Restrict a dim->dim channel to a two-level subspace, assuming the subspace
// is invariant under the map.
QuantumChannel restrict_to_pair(const QuantumChannel& chan, int p, int q) {
  Matrix v = Matrix::Zero(chan.dim_in(), 2);
  v(p, 0) = 1.0;
  v(q, 1) = 1.0;
  const QuantumChannel enc = QuantumChannel::from_unitary(v);
  const QuantumChannel dec = QuantumChannel::from_unitary(Matrix(v.adjoint()));
  return enc.then(chan).then(dec);
}

}  // namespace

double nuclear_pi_pulse_fidelity(HalfInteger spin, double gamma_n,
                                 int transition) {
  if (transition < 1 || transition > spin.twice()) {
    throw std::invalid_argument("transition index out of range");
  }
  const int dim = spin.dimension();
  const int p = transition - 1;
  const int q = transition;
  const double omega = 1.0;
  const Matrix h = rwa_pulse_hamiltonian(dim, {{p, q}}, 0.0, omega);
  const double tau = M_PI / omega;

  const QuantumChannel noisy =
      channel_of_segment(h, nuclear_dephasing_generator(spin, gamma_n), tau);
  const Matrix u_ideal = rotation(h, tau);  // exp(-i h tau)
  const QuantumChannel ideal_inverse =
      QuantumChannel::from_unitary(Matrix(u_ideal.adjoint()));
  return average_gate_fidelity(
      restrict_to_pair(noisy.then(ideal_inverse), p, q));
}

double electron_pi_pulse_fidelity(double gamma_e) {
  const double omega = 1.0;
  const Matrix h = -0.5 * omega * pauli_x();
  const double tau = M_PI / omega;
  const Matrix gen = 0.5 * gamma_e * dissipator(pauli_z());
  const QuantumChannel noisy = channel_of_segment(h, gen, tau);
  const Matrix u_ideal = rotation(h, tau);
  const QuantumChannel ideal_inverse =
      QuantumChannel::from_unitary(Matrix(u_ideal.adjoint()));
  return average_gate_fidelity(noisy.then(ideal_inverse));
}

}  // namespace maus
