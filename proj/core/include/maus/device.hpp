#ifndef MAUS_DEVICE_HPP
#define MAUS_DEVICE_HPP

#include <string>
#include <tuple>

#include "maus/spin.hpp"

namespace maus {

/// Donor parameters in ordinary-frequency units (the "/2pi" convention):
/// gyromagnetic ratios in GHz/T (electron) and MHz/T (nucleus), hyperfine A
/// in MHz, quadrupole Q in kHz, fields in T / mT, Rabi frequencies in kHz.
struct PhysicalParams {
  double gamma_e = 0.0;
  double gamma_n = 0.0;
  double hyperfine = 0.0;
  double quadrupole = 0.0;
  double bz = 0.0;
  double b1 = 0.0;
  double omega_nuclear = 0.0;
  double omega_electron = 0.0;

  void validate() const;
};

PhysicalParams arsenic_params();
PhysicalParams load_species(const std::string& path);
PhysicalParams parse_species(const std::string& json_text,
                             const std::string& species);

/// NMR transition frequency (gamma_n Bz + A + (j - 2) Q / 2) in MHz for
/// transition index 1 <= j <= 2I.
double nmr_frequency(const PhysicalParams& params, HalfInteger spin, int j);

/// ESR frequency (gamma_e Bz + 2 k A) in GHz for nuclear projection k.
double esr_frequency(const PhysicalParams& params, HalfInteger spin,
                     HalfInteger k);

/// Generalized-rotating-frame drive Hamiltonian for spin 3/2, in MHz:
/// (gamma_n / 2) tridiag(sqrt(3) B1, 2 B2, sqrt(3) B3) with fields in mT and
/// gamma_n folded to MHz/mT.
Eigen::MatrixXd grf_hamiltonian(const PhysicalParams& params, HalfInteger spin,
                                double b1, double b2, double b3);

struct IxCalibration {
  double b1;
  double b2;
  double b3;
  /// Raised when Omega_target >= Q/10 and the slow-drive assumption behind
  /// transition-selective pulses becomes questionable.
  bool slow_drive_warning;
};

/// Tone amplitudes (mT) such that grf_hamiltonian equals Omega_target * Ix,
/// Omega_target in kHz.
IxCalibration calibrate_ix(const PhysicalParams& params, HalfInteger spin,
                           double omega_target);

struct DurationReport {
  double encoding_ms;
  double recovery_ms;
  double electron_manipulation_ms;
  double readout_ms;
  double detection_ms;
};

DurationReport duration_report(HalfInteger spin, const PhysicalParams& params);

/// Nuclear phase spread A * dt accumulated during an electron-readout window
/// of uncertain duration dt; A in rad/s, dt in s.
double readout_phase_uncertainty(double hyperfine_angular, double dt);

/// Ratio of the adjacent-ESR-line separation 2A to the electron Rabi
/// frequency; large values justify treating conditional pulses as selective.
double esr_selectivity_ratio(const PhysicalParams& params);

}  // namespace maus

#endif  // MAUS_DEVICE_HPP
