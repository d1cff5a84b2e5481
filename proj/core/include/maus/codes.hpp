#ifndef MAUS_CODES_HPP
#define MAUS_CODES_HPP

#include <vector>

#include "maus/channel.hpp"
#include "maus/dynamics.hpp"
#include "maus/spin.hpp"

namespace maus {

/// Encoding isometry plus the syndrome-subspace decomposition of the physical
/// nuclear space, with one recovery unitary per subspace.
struct CodeSpec {
  HalfInteger spin;
  Matrix encode;  // (2I+1) x 2 isometry
  std::vector<Matrix> syndrome_projectors;
  std::vector<Matrix> recovery_unitaries;

  int physical_dim() const { return spin.dimension(); }
  int syndrome_count() const {
    return static_cast<int>(syndrome_projectors.size());
  }
};

/// Codewords |0>_L = |I>_y, |1>_L = |-I>_y; syndrome subspace k is
/// span{|±(I-k)>_y}. Requires I >= 3/2.
CodeSpec maus_code(HalfInteger spin);

/// rho -> sum_k U_k P_k rho P_k U_k^dag (instantaneous detection + recovery).
QuantumChannel ideal_recovery_channel(const CodeSpec& code);

struct KnillLaflammeResult {
  bool satisfied;
  double residual;
};

/// Evaluates P E_a^dag E_b P = C_ab P on the codespace projector P; residual
/// is the largest entrywise deviation.
KnillLaflammeResult knill_laflamme_check(const CodeSpec& code,
                                         const std::vector<Matrix>& errors,
                                         double tol = 1e-10);

/// decode ∘ recovery ∘ physical ∘ encode as a 2 -> 2 channel.
QuantumChannel logical_channel(const CodeSpec& code,
                               const QuantumChannel& physical,
                               const QuantumChannel& recovery);

/// Entanglement fidelity of the uncorrected |±1/2>_z encoding under free
/// dephasing: (1 + exp(-Gamma_n t / 2)) / 2.
double breakeven_baseline(double gamma_n, double t);

/// Fidelity of the uncorrected extremal |±I>_z encoding, for contrast.
double extremal_baseline(HalfInteger spin, double gamma_n, double t);

/// Entanglement fidelity of the ideally corrected MAUS code at noise
/// strength Gamma_n * t (nucleus-only, Fig.-3-style pipeline).
double ideal_corrected_fidelity(const CodeSpec& code, double gamma_n_t);

/// Least-squares slope of log(y) vs log(x).
double log_log_slope(const std::vector<double>& x,
                     const std::vector<double>& y);

}  // namespace maus

#endif  // MAUS_CODES_HPP
