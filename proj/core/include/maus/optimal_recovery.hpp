#ifndef MAUS_OPTIMAL_RECOVERY_HPP
#define MAUS_OPTIMAL_RECOVERY_HPP

#include <string>
#include <vector>

#include "maus/channel.hpp"

namespace maus {

/// Encoding + noise pipeline (logical dim 2 -> physical dim d) whose recovery
/// is to be optimized for entanglement fidelity.
struct RecoveryProblem {
  QuantumChannel pipeline;
};

struct RecoverySolverOptions {
  double residual_tol = 1e-8;
  int max_iterations = 100000;
  double penalty = 1.0;
};

struct RecoveryResult {
  double fidelity = 0.0;
  QuantumChannel recovery;
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

/// Hermitian matrix M on H_out ⊗ H_in with F_e(R ∘ pipeline) = Tr[J(R) M] for
/// every recovery channel R, J(R) its Choi matrix.
Matrix fidelity_objective_matrix(const QuantumChannel& pipeline);

/// Maximizes F_e(R ∘ pipeline) over CPTP R: d -> 2 by ADMM over the Choi
/// matrix (PSD projection via eigendecomposition, trace-preservation via
/// affine projection).
RecoveryResult optimal_recovery(const RecoveryProblem& problem,
                                const RecoverySolverOptions& options = {});

/// Two orthonormal spin-5/2 codewords read from a JSON configuration file
/// (list of two length-6 complex vectors with fields "re"/"im" per
/// amplitude). Returns the 6 x 2 encoding isometry.
Matrix load_qudit_codewords(const std::string& path);
Matrix parse_qudit_codewords(const std::string& json_text);

struct CurvePoint {
  double gamma_n_t;
  double fidelity;
};

/// Optimal-recovery fidelity of the minimal qudit encoding under nuclear
/// dephasing, one SDP solve per grid point.
std::vector<CurvePoint> minimal_qudit_fidelity_curve(
    const Matrix& encode, double gamma_n, const std::vector<double>& t_grid,
    const RecoverySolverOptions& options = {});

}  // namespace maus

#endif  // MAUS_OPTIMAL_RECOVERY_HPP
