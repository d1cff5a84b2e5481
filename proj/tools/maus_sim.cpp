#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maus/sweeps.hpp"

namespace {

bool parse_on_off(const std::string& value, bool& out) {
  if (value == "on") {
    out = true;
    return true;
  }
  if (value == "off") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAUS code figure-reproduction sweeps"};
  app.get_formatter()->column_width(36);

  std::string experiment;
  std::string config_path;
  std::string out_path;
  std::vector<int> spin_twice;
  std::vector<double> gamma_n;
  std::vector<double> gamma_e;
  double t_min = 0, t_max = 0;
  int t_count = 0;
  int threads = 0;
  std::vector<std::string> flags;

  app.add_option("experiment", experiment,
                 "one of: ideal-fig3, protocol-fig4, breakeven-fig5a, "
                 "breakeven-fig5b, pulse-fidelity, spectrum")
      ->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_path, "output CSV path");
  app.add_option("--spin", spin_twice,
                 "spin magnitudes as twice their value (e.g. 3 for 3/2)");
  app.add_option("--gamma-n", gamma_n, "nuclear dephasing rates (units of Omega)");
  app.add_option("--gamma-e", gamma_e, "electron dephasing rates (units of Omega)");
  app.add_option("--t-min", t_min, "smallest gamma_n*t grid value");
  app.add_option("--t-max", t_max, "largest gamma_n*t grid value");
  app.add_option("--t-count", t_count, "number of log-spaced grid points");
  app.add_option("--threads", threads, "worker thread count");
  app.add_option("--flag", flags,
                 "feature flags, e.g. quantize-wait=on, encoding-noise=off");

  CLI11_PARSE(app, argc, argv);

  try {
    maus::SweepConfig config;
    if (!config_path.empty()) {
      config = maus::load_sweep_config(config_path);
      if (config.experiment != experiment) {
        std::fprintf(stderr,
                     "config error: experiment '%s' does not match config "
                     "file experiment '%s'\n",
                     experiment.c_str(), config.experiment.c_str());
        return 1;
      }
    } else {
      config.experiment = experiment;
    }
    if (!out_path.empty()) config.out_path = out_path;
    if (!spin_twice.empty()) config.spin_twice = spin_twice;
    if (!gamma_n.empty()) config.gamma_n = gamma_n;
    if (!gamma_e.empty()) config.gamma_e = gamma_e;
    if (app.count("--t-min")) config.t_min = t_min;
    if (app.count("--t-max")) config.t_max = t_max;
    if (app.count("--t-count")) config.t_count = t_count;
    if (app.count("--threads")) config.threads = threads;
    for (const std::string& flag : flags) {
      const auto eq = flag.find('=');
      const std::string key = flag.substr(0, eq);
      const std::string value =
          eq == std::string::npos ? std::string("on") : flag.substr(eq + 1);
      bool enabled = false;
      if (!parse_on_off(value, enabled)) {
        std::fprintf(stderr, "config error: flag value must be on|off: %s\n",
                     flag.c_str());
        return 1;
      }
      if (key == "quantize-wait") {
        config.quantize_wait = enabled;
      } else if (key == "encoding-noise") {
        config.encoding_noise = enabled;
      } else {
        std::fprintf(stderr, "config error: unknown flag %s\n", key.c_str());
        return 1;
      }
    }
    maus::validate_config(config);

    const maus::RunResult result = maus::run_experiment(config);
    const std::string written = maus::write_results(config, result);
    std::fprintf(stderr, "wrote %s (%zu rows, %d failed, %.2fs)\n",
                 written.c_str(), result.rows.size(), result.failures,
                 result.wall_seconds);
    return result.failures == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
