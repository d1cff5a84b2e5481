#ifndef MAUS_CHANNEL_HPP
#define MAUS_CHANNEL_HPP

#include <vector>

#include "maus/spin.hpp"

namespace maus {

/// Completely positive map held in a canonical superoperator representation
/// (column-stacking convention: vec(A rho B) = (B^T ⊗ A) vec(rho)).
/// Choi and Kraus forms are derived views. Measurement branches are
/// sub-normalized and flagged as such.
class QuantumChannel {
 public:
  static QuantumChannel from_superop(Matrix superop, int dim_in, int dim_out,
                                     bool subnormalized = false);
  static QuantumChannel identity(int dim);
  /// Channel rho -> U rho U^dagger; also accepts isometries (dim_out x dim_in).
  static QuantumChannel from_unitary(const Matrix& u);
  static QuantumChannel from_kraus(const std::vector<Matrix>& kraus,
                                   bool subnormalized = false);
  /// Sub-normalized branch rho -> P rho P^dagger for a projector P.
  static QuantumChannel branch_projection(const Matrix& projector);
  /// Superoperator reconstructed from a Choi matrix in the out ⊗ in ordering.
  static QuantumChannel from_choi(const Matrix& choi, int dim_in, int dim_out,
                                  bool subnormalized = false);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const Matrix& superop() const { return superop_; }
  bool subnormalized() const { return subnormalized_; }

  Matrix apply(const Matrix& rho) const;

  /// Composition: (next ∘ this), i.e. this channel acts first.
  QuantumChannel then(const QuantumChannel& next) const;

  QuantumChannel operator+(const QuantumChannel& other) const;

  /// Unnormalized Choi matrix sum_ij E(|i><j|) ⊗ |i><j| on H_out ⊗ H_in.
  Matrix choi() const;
  std::vector<Matrix> kraus(double threshold = 1e-12) const;

  double trace_preserving_residual() const;
  double choi_min_eigenvalue() const;
  bool is_cptp(double tp_tol = 1e-9, double psd_tol = 1e-9) const;

  /// F_e = <Phi| (E ⊗ id)(|Phi><Phi|) |Phi> with |Phi> maximally entangled;
  /// equals Tr(superop)/d^2 in the column-stacking convention.
  double entanglement_fidelity() const;

 private:
  QuantumChannel(Matrix superop, int dim_in, int dim_out, bool subnormalized)
      : superop_(std::move(superop)),
        dim_in_(dim_in),
        dim_out_(dim_out),
        subnormalized_(subnormalized) {}

  Matrix superop_;
  int dim_in_;
  int dim_out_;
  bool subnormalized_;
};

Matrix vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int rows, int cols);

/// (2 F_e d + 1) / (d + 1) with d = 2: average gate fidelity on a qubit.
double average_gate_fidelity(const QuantumChannel& logical);

}  // namespace maus

#endif  // MAUS_CHANNEL_HPP
