#include "maus/device.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace maus {

void PhysicalParams::validate() const {
  if (gamma_e <= 0 || gamma_n <= 0 || quadrupole <= 0 || bz <= 0 || b1 <= 0 ||
      omega_nuclear <= 0 || omega_electron <= 0) {
    throw std::invalid_argument("physical magnitudes must be positive");
  }
  if (hyperfine <= 0) {
    throw std::invalid_argument(
        "the hyperfine coupling cannot be null in this protocol");
  }
}

PhysicalParams arsenic_params() {
  PhysicalParams p;
  p.gamma_e = 28.02;      // GHz/T
  p.gamma_n = 7.31;       // MHz/T
  p.hyperfine = 198.35;   // MHz
  p.quadrupole = 50.0;    // kHz
  p.bz = 1.0;             // T
  p.b1 = 0.1;             // mT
  p.omega_nuclear = 1.0;  // kHz
  p.omega_electron = 100.0;
  return p;
}

PhysicalParams parse_species(const std::string& json_text,
                             const std::string& species) {
  const auto doc = nlohmann::json::parse(json_text);
  if (!doc.contains(species)) {
    throw std::invalid_argument("unknown species: " + species);
  }
  const auto& entry = doc.at(species);
  PhysicalParams p;
  p.gamma_e = entry.at("gamma_e_GHz_per_T").get<double>();
  p.gamma_n = entry.at("gamma_n_MHz_per_T").get<double>();
  p.hyperfine = entry.at("hyperfine_MHz").get<double>();
  p.quadrupole = entry.at("quadrupole_kHz").get<double>();
  p.bz = entry.value("bz_T", 1.0);
  p.b1 = entry.value("b1_mT", 0.1);
  p.omega_nuclear = entry.value("omega_nuclear_kHz", 1.0);
  p.omega_electron = entry.value("omega_electron_kHz", 100.0);
  p.validate();
  return p;
}

PhysicalParams load_species(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open species file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_species(buf.str(), "arsenic");
}

double nmr_frequency(const PhysicalParams& params, HalfInteger spin, int j) {
  if (j < 1 || j > spin.twice()) {
    throw std::invalid_argument("transition index out of range");
  }
  return params.gamma_n * params.bz + params.hyperfine +
         (j - 2) * params.quadrupole * 1e-3 / 2.0;
}

double esr_frequency(const PhysicalParams& params, HalfInteger spin,
                     HalfInteger k) {
  if (std::abs(k.twice()) > spin.twice() ||
      (k.twice() % 2 + 2) % 2 != (spin.twice() % 2 + 2) % 2) {
    throw std::invalid_argument("invalid nuclear projection");
  }
  return params.gamma_e * params.bz + 2.0 * k.value() * params.hyperfine * 1e-3;
}

Eigen::MatrixXd grf_hamiltonian(const PhysicalParams& params, HalfInteger spin,
                                double b1, double b2, double b3) {
  if (spin.twice() != 3) {
    throw std::invalid_argument("GRF matrix is defined for spin 3/2");
  }
  const double gamma_mhz_per_mt = params.gamma_n * 1e-3;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
  const double e1 = std::sqrt(3.0) * b1;
  const double e2 = 2.0 * b2;
  const double e3 = std::sqrt(3.0) * b3;
  h(0, 1) = h(1, 0) = 0.5 * gamma_mhz_per_mt * e1;
  h(1, 2) = h(2, 1) = 0.5 * gamma_mhz_per_mt * e2;
  h(2, 3) = h(3, 2) = 0.5 * gamma_mhz_per_mt * e3;
  return h;
}

IxCalibration calibrate_ix(const PhysicalParams& params, HalfInteger spin,
                           double omega_target) {
  if (spin.twice() != 3) {
    throw std::invalid_argument("GRF calibration is defined for spin 3/2");
  }
  // gamma_n sqrt(3) B1 / 2 = Omega [Ix]_{01} = Omega sqrt(3)/2, and likewise
  // for the middle tone, so every amplitude equals Omega / gamma_n.
  const double amplitude = omega_target / params.gamma_n;  // kHz / (MHz/T) = mT
  return {amplitude, amplitude, amplitude,
          omega_target >= params.quadrupole / 10.0};
}

DurationReport duration_report(HalfInteger spin,
                               const PhysicalParams& params) {
  const double encoding_angle = spin.twice() * M_PI;
  DurationReport report;
  // theta / (2 pi f) with f in kHz gives milliseconds.
  report.encoding_ms = encoding_angle / (2.0 * M_PI * params.omega_nuclear);
  report.recovery_ms = M_PI / (2.0 * M_PI * params.omega_nuclear);
  report.electron_manipulation_ms = 0.1;
  report.readout_ms = 0.5;
  report.detection_ms = report.electron_manipulation_ms + report.readout_ms;
  return report;
}

double readout_phase_uncertainty(double hyperfine_angular, double dt) {
  if (hyperfine_angular < 0 || dt < 0) {
    throw std::invalid_argument("rate and duration must be non-negative");
  }
  return hyperfine_angular * dt;
}

double esr_selectivity_ratio(const PhysicalParams& params) {
  return 2.0 * params.hyperfine * 1e3 / params.omega_electron;
}

}  // namespace maus
