#include "maus/optimal_recovery.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "maus/dynamics.hpp"

namespace maus {

Matrix fidelity_objective_matrix(const QuantumChannel& pipeline) {
  if (pipeline.dim_in() != 2) {
    throw std::invalid_argument("pipeline must have logical input dimension 2");
  }
  const int d = pipeline.dim_out();
  // F_e(R ∘ E) = (1/4) sum_ij <i| R(E(|i><j|)) |j>
  //            = (1/4) sum_ijmn J_R[(i,m),(j,n)] (X_ij)_mn = Tr[J_R M]
  // with M[(a,p),(b,q)] = (1/4) (X_ba)_qp and X_ij = E(|i><j|).
  Matrix m = Matrix::Zero(2 * d, 2 * d);
  Matrix unit = Matrix::Zero(2, 2);
  for (int b = 0; b < 2; ++b) {
    for (int a = 0; a < 2; ++a) {
      unit.setZero();
      unit(b, a) = 1.0;
      const Matrix x_ba = pipeline.apply(unit);
      for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
          m(a * d + p, b * d + q) = 0.25 * x_ba(q, p);
        }
      }
    }
  }
  return m;
}

namespace {

// Orthogonal projection onto {J : Tr_out J = I} for J on H_out ⊗ H_in with
// out dimension 2; the correction is spread evenly over the two blocks.
Matrix project_trace_preserving(const Matrix& j, int d) {
  Matrix out = j;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const Complex target = (m == n) ? 1.0 : 0.0;
      const Complex current = j(m, n) + j(d + m, d + n);
      const Complex shift = 0.5 * (target - current);
      out(m, n) += shift;
      out(d + m, d + n) += shift;
    }
  }
  return out;
}

Matrix project_psd(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      Matrix(0.5 * (x + x.adjoint())));
  Eigen::VectorXd evals = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * evals.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

RecoveryResult optimal_recovery(const RecoveryProblem& problem,
                                const RecoverySolverOptions& options) {
  const int d = problem.pipeline.dim_out();
  if (d > 16) {
    throw std::invalid_argument("physical dimension above supported bound 16");
  }
  const Matrix m = fidelity_objective_matrix(problem.pipeline);
  const int n = 2 * d;
  const double rho = options.penalty;

  // Feasible start: discard-and-replace channel rho -> Tr(rho) 1/2.
  Matrix z = 0.5 * Matrix::Identity(n, n);
  Matrix u = Matrix::Zero(n, n);
  Matrix j = z;

  double primal = 0.0;
  double dual = 0.0;
  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iterations; ++iter) {
    j = project_trace_preserving(z - u + m / rho, d);
    const Matrix z_prev = z;
    z = project_psd(j + u);
    u += j - z;
    primal = (j - z).norm();
    dual = rho * (z - z_prev).norm();
    if (primal < options.residual_tol && dual < options.residual_tol) {
      converged = true;
      ++iter;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "optimal_recovery did not converge after " << iter
        << " iterations (primal residual " << primal << ", dual residual "
        << dual << ")";
    throw std::runtime_error(msg.str());
  }

  // z is PSD by construction and trace-preserving up to the primal residual.
  RecoveryResult result{(z.cwiseProduct(m.transpose())).sum().real(),
                        QuantumChannel::from_choi(z, d, 2), converged, iter,
                        primal, dual};
  return result;
}

Matrix parse_qudit_codewords(const std::string& json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  const auto& words = doc.contains("codewords") ? doc.at("codewords") : doc;
  if (!words.is_array() || words.size() != 2) {
    throw std::invalid_argument("expected exactly two codewords");
  }
  Matrix encode(6, 2);
  for (int c = 0; c < 2; ++c) {
    const auto& amps = words.at(c);
    if (!amps.is_array() || amps.size() != 6) {
      throw std::invalid_argument("codewords must have six amplitudes");
    }
    for (int r = 0; r < 6; ++r) {
      encode(r, c) = Complex(amps.at(r).at("re").get<double>(),
                             amps.at(r).at("im").get<double>());
    }
  }
  const Matrix gram = encode.adjoint() * encode;
  if ((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("codewords are not orthonormal within 1e-10");
  }
  return encode;
}

Matrix load_qudit_codewords(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open codeword configuration: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_qudit_codewords(buf.str());
}

std::vector<CurvePoint> minimal_qudit_fidelity_curve(
    const Matrix& encode, double gamma_n, const std::vector<double>& t_grid,
    const RecoverySolverOptions& options) {
  if (encode.rows() != 6 || encode.cols() != 2) {
    throw std::invalid_argument("minimal qudit encoding must be 6 x 2");
  }
  const HalfInteger spin{5};
  const QuantumChannel enc = QuantumChannel::from_unitary(encode);
  std::vector<CurvePoint> curve;
  curve.reserve(t_grid.size());
  for (double t : t_grid) {
    const QuantumChannel noise = nuclear_dephasing_channel(spin, gamma_n, t);
    const RecoveryResult res = optimal_recovery({enc.then(noise)}, options);
    curve.push_back({gamma_n * t, res.fidelity});
  }
  return curve;
}

}  // namespace maus
