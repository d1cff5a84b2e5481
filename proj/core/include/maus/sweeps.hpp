#ifndef MAUS_SWEEPS_HPP
#define MAUS_SWEEPS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maus/spin.hpp"

namespace maus {

/// Configuration of one figure-reproduction experiment. All rates are in
/// units of Omega; time grids are log-spaced in the dimensionless product
/// gamma_n * t.
struct SweepConfig {
  std::string experiment;
  std::vector<int> spin_twice = {3};
  std::vector<double> gamma_n = {1e-4};
  std::vector<double> gamma_e = {5e-4};
  double t_min = 1e-4;
  double t_max = 1.0;
  int t_count = 40;
  std::string out_path = "out.csv";
  std::uint64_t seed = 0;
  bool quantize_wait = false;
  bool encoding_noise = false;
  double quadrupole_over_omega = 50.0;
  int threads = 1;
  std::string codewords_path;

  /// Test hook: invoked with each point index before evaluation; may throw to
  /// simulate a point failure. Not part of the serialized configuration.
  std::function<void(std::size_t)> fault_injector;
};

SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::string& path);
void validate_config(const SweepConfig& config);

/// Canonical serialization of the configuration (sorted keys, fixed float
/// format); hashed for provenance.
std::string canonical_config(const SweepConfig& config);
std::uint64_t config_hash(const SweepConfig& config);

/// Output path with flag-dependent suffix (encoding-noise runs are kept
/// side by side with plain runs).
std::string resolved_output_path(const SweepConfig& config);

struct PointRecord {
  std::vector<double> values;
  bool ok = false;
  std::string error;
};

struct RunResult {
  std::vector<std::string> columns;
  std::vector<PointRecord> rows;
  int failures = 0;
  double wall_seconds = 0.0;
};

/// Runs the configured experiment over its grid. Points are evaluated in
/// parallel into indexed slots; per-point failures are recorded in the row
/// and counted, never fatal.
RunResult run_experiment(const SweepConfig& config);

/// CSV text: header row, 12-significant-digit scientific notation, failed
/// rows carry an error column entry.
std::string format_csv(const RunResult& result);

/// JSON sidecar with config hash, convention flags, per-point status and
/// wall-clock time.
std::string emit_metadata(const SweepConfig& config, const RunResult& result);

/// Writes CSV and metadata sidecar next to it. Returns the CSV path written.
std::string write_results(const SweepConfig& config, const RunResult& result);

std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace maus

#endif  // MAUS_SWEEPS_HPP
