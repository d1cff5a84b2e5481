#ifndef MAUS_DYNAMICS_HPP
#define MAUS_DYNAMICS_HPP

#include <utility>
#include <vector>

#include "maus/channel.hpp"
#include "maus/spin.hpp"

namespace maus {

/// Dephasing rates, expressed in units of the Rabi frequency Omega.
struct NoiseParams {
  double gamma_n = 0.0;
  double gamma_e = 0.0;
};

/// Lindblad dissipator superoperator D[L] rho = L rho L^dag - {L^dag L, rho}/2.
Matrix dissipator(const Matrix& lindblad_op);

/// Generator of Gamma_n D[I_z ⊗ 1] + (Gamma_e / 2) D[1 ⊗ sigma_z] on the
/// composite nucleus ⊗ electron space of dimension 2(2I+1).
Matrix dephasing_generator(HalfInteger spin, const NoiseParams& noise);

/// Nucleus-only generator Gamma_n D[I_z].
Matrix nuclear_dephasing_generator(HalfInteger spin, double gamma_n);

/// Analytic propagator of the composite dephasing generator: the matrix unit
/// |m,s><n,s'| decays by exp(-[Gamma_n (m-n)^2/2 + Gamma_e [s != s']] t).
QuantumChannel free_evolution_channel(HalfInteger spin,
                                      const NoiseParams& noise, double t);

/// Analytic nucleus-only dephasing propagator.
QuantumChannel nuclear_dephasing_channel(HalfInteger spin, double gamma_n,
                                         double t);

/// RWA drive H = -(Omega/2) sum_pairs (sigma_x^pq cos phi + sigma_y^pq sin phi)
/// on a dim-dimensional space; level pairs must be disjoint.
Matrix rwa_pulse_hamiltonian(int dim,
                             const std::vector<std::pair<int, int>>& pairs,
                             double phi, double omega);

/// Full Liouvillian -i[H, .] + generator in the column-stacking convention.
Matrix liouvillian(const Matrix& hamiltonian, const Matrix& generator);

/// Channel of a constant-Liouvillian segment, exponentiated exactly.
QuantumChannel channel_of_segment(const Matrix& hamiltonian,
                                  const Matrix& generator, double duration);

Matrix evolve_piecewise(const Matrix& hamiltonian, const Matrix& generator,
                        const Matrix& rho, double duration);

/// Fixed-step RK4 integration of the same master equation; cross-check oracle
/// for the exact exponential. Step bounded by 1e-3 / (||H|| + ||L||).
Matrix evolve_rk4(const Matrix& hamiltonian, const Matrix& generator,
                  const Matrix& rho, double duration);

/// Average gate fidelity of a resonant pi pulse on one nuclear transition
/// (levels j-1 <-> j, 1-indexed) under Gamma_n D[I_z], vs the ideal pulse.
double nuclear_pi_pulse_fidelity(HalfInteger spin, double gamma_n,
                                 int transition = 1);

/// Average gate fidelity of a resonant electron pi pulse under
/// (Gamma_e / 2) D[sigma_z].
double electron_pi_pulse_fidelity(double gamma_e);

}  // namespace maus

#endif  // MAUS_DYNAMICS_HPP
