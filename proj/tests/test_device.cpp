#include <doctest.h>

#include <cmath>

#include "maus/device.hpp"

using namespace maus;

TEST_CASE("arsenic transition frequencies") {
  const PhysicalParams p = arsenic_params();
  const HalfInteger spin{3};
  CHECK(nmr_frequency(p, spin, 2) == doctest::Approx(205.66).epsilon(1e-6));
  CHECK(nmr_frequency(p, spin, 3) - nmr_frequency(p, spin, 1) ==
        doctest::Approx(0.05));
  CHECK_THROWS_AS(nmr_frequency(p, spin, 0), std::invalid_argument);
  CHECK_THROWS_AS(nmr_frequency(p, spin, 4), std::invalid_argument);

  PhysicalParams degenerate = p;
  degenerate.quadrupole = 1e-30;
  CHECK(nmr_frequency(degenerate, spin, 1) ==
        doctest::Approx(nmr_frequency(degenerate, spin, 3)));

  CHECK(esr_frequency(p, spin, HalfInteger{3}) ==
        doctest::Approx(28.61505).epsilon(1e-9));
  CHECK(esr_frequency(p, spin, HalfInteger{1}) -
            esr_frequency(p, spin, HalfInteger{-1}) ==
        doctest::Approx(2 * p.hyperfine * 1e-3));
  CHECK_THROWS_AS(esr_frequency(p, spin, HalfInteger{5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(esr_frequency(p, spin, HalfInteger{0}),
                  std::invalid_argument);
}

TEST_CASE("frequencies stay positive over the physical field range") {
  const PhysicalParams base = arsenic_params();
  const HalfInteger spin{3};
  for (double bz : {0.5, 1.0, 2.0}) {
    PhysicalParams p = base;
    p.bz = bz;
    for (int j = 1; j <= 3; ++j) CHECK(nmr_frequency(p, spin, j) > 0);
    for (int tk : {3, 1, -1, -3}) {
      CHECK(esr_frequency(p, spin, HalfInteger{tk}) > 0);
    }
  }
}

TEST_CASE("GRF Hamiltonian matches the I_x profile when calibrated") {
  const PhysicalParams p = arsenic_params();
  const HalfInteger spin{3};
  CHECK(grf_hamiltonian(p, spin, 0, 0, 0).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(grf_hamiltonian(p, HalfInteger{5}, 1, 1, 1),
                  std::invalid_argument);

  const double omega = 1.0;  // kHz
  const auto cal = calibrate_ix(p, spin, omega);
  CHECK(cal.b1 == doctest::Approx(cal.b2));
  CHECK(cal.b2 == doctest::Approx(cal.b3));
  CHECK(cal.b1 < 0.5);  // mT
  CHECK(!cal.slow_drive_warning);

  const Eigen::MatrixXd h = grf_hamiltonian(p, spin, cal.b1, cal.b2, cal.b3);
  const SpinOps ops = angular_momentum_ops(spin);
  const double omega_mhz = omega * 1e-3;
  CHECK((h - omega_mhz * ops.x.real()).cwiseAbs().maxCoeff() < 1e-12);

  // asymmetric amplitudes break the proportionality
  const Eigen::MatrixXd skew =
      grf_hamiltonian(p, spin, cal.b1, 2 * cal.b2, cal.b3);
  CHECK((skew - omega_mhz * ops.x.real()).cwiseAbs().maxCoeff() > 1e-6);

  CHECK(calibrate_ix(p, spin, 0.0).b1 == doctest::Approx(0.0));
  CHECK(calibrate_ix(p, spin, p.quadrupole / 5.0).slow_drive_warning);
}

TEST_CASE("duration report uses the quoted constants") {
  const PhysicalParams p = arsenic_params();
  const DurationReport report = duration_report(HalfInteger{3}, p);
  CHECK(report.encoding_ms == doctest::Approx(1.5));
  CHECK(report.recovery_ms == doctest::Approx(0.5));
  CHECK(report.detection_ms == doctest::Approx(0.6));
}

TEST_CASE("readout phase uncertainty is the rate-time product") {
  CHECK(readout_phase_uncertainty(1e8, 1e-7) == doctest::Approx(10.0));
  CHECK(readout_phase_uncertainty(1e8, 0.0) == doctest::Approx(0.0));
  CHECK(readout_phase_uncertainty(1e4, 1e-7) == doctest::Approx(1e-3));
  CHECK_THROWS_AS(readout_phase_uncertainty(-1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("conditional ESR pulses are selective") {
  CHECK(esr_selectivity_ratio(arsenic_params()) > 100.0);
}

TEST_CASE("species presets parse and validate") {
  const char* text = R"({"arsenic": {
    "gamma_e_GHz_per_T": 28.02, "gamma_n_MHz_per_T": 7.31,
    "hyperfine_MHz": 198.35, "quadrupole_kHz": 50.0}})";
  const PhysicalParams p = parse_species(text, "arsenic");
  CHECK(p.hyperfine == doctest::Approx(198.35));
  CHECK(p.bz == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_species(text, "phosphorus"), std::invalid_argument);

  PhysicalParams invalid = arsenic_params();
  invalid.hyperfine = 0.0;
  CHECK_THROWS_AS(invalid.validate(), std::invalid_argument);
}
