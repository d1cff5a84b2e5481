#include "maus/sweeps.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "maus/codes.hpp"
#include "maus/device.hpp"
#include "maus/dynamics.hpp"
#include "maus/optimal_recovery.hpp"
#include "maus/protocol.hpp"

namespace maus {

namespace {

const std::vector<std::string> kExperiments = {
    "ideal-fig3",     "protocol-fig4", "breakeven-fig5a",
    "breakeven-fig5b", "pulse-fidelity", "spectrum"};

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

using PointEvaluator = std::function<std::vector<double>(std::size_t)>;

/// One worker unit: shared setup (prepare) plus one evaluation per grid
/// point, writing rows [first_row, first_row + row_count).
struct Task {
  std::size_t first_row;
  std::size_t row_count;
  std::function<PointEvaluator()> prepare;
};

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 1 || lo <= 0 || (count > 1 && lo >= hi)) {
    throw std::invalid_argument("log grid requires 0 < min < max");
  }
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = std::exp(std::log(lo) + i * step);
  return grid;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  SweepConfig config;
  try {
    config.experiment = doc.at("experiment").get<std::string>();
    if (doc.contains("spin_twice")) {
      config.spin_twice = doc.at("spin_twice").get<std::vector<int>>();
    }
    if (doc.contains("gamma_n")) {
      config.gamma_n = doc.at("gamma_n").get<std::vector<double>>();
    }
    if (doc.contains("gamma_e")) {
      config.gamma_e = doc.at("gamma_e").get<std::vector<double>>();
    }
    config.t_min = doc.value("t_min", config.t_min);
    config.t_max = doc.value("t_max", config.t_max);
    config.t_count = doc.value("t_count", config.t_count);
    config.out_path = doc.value("out", config.out_path);
    config.seed = doc.value("seed", config.seed);
    config.quantize_wait = doc.value("quantize_wait", config.quantize_wait);
    config.encoding_noise = doc.value("encoding_noise", config.encoding_noise);
    config.quadrupole_over_omega =
        doc.value("quadrupole_over_omega", config.quadrupole_over_omega);
    config.threads = doc.value("threads", config.threads);
    config.codewords_path = doc.value("codewords", config.codewords_path);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") +
                                e.what());
  }
  validate_config(config);
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

void validate_config(const SweepConfig& config) {
  bool known = false;
  for (const auto& name : kExperiments) known = known || name == config.experiment;
  if (!known) {
    throw std::invalid_argument("experiment: unknown name '" +
                                config.experiment + "'");
  }
  if (config.spin_twice.empty()) {
    throw std::invalid_argument("spin_twice: list must be non-empty");
  }
  for (int twice : config.spin_twice) {
    if (twice < 3 || twice % 2 == 0) {
      throw std::invalid_argument(
          "spin_twice: entries must be odd and at least 3");
    }
  }
  if (config.gamma_n.empty() || config.gamma_e.empty()) {
    throw std::invalid_argument("gamma_n/gamma_e: grids must be non-empty");
  }
  for (double g : config.gamma_n) {
    if (g <= 0) throw std::invalid_argument("gamma_n: bounds must be positive");
  }
  for (double g : config.gamma_e) {
    if (g <= 0) throw std::invalid_argument("gamma_e: bounds must be positive");
  }
  if (config.t_count < 1) {
    throw std::invalid_argument("t_count: must be at least 1");
  }
  if (config.t_min <= 0) {
    throw std::invalid_argument("t_min: must be positive");
  }
  if (config.t_count > 1 && config.t_min >= config.t_max) {
    throw std::invalid_argument("t grid: log spacing requires t_min < t_max");
  }
  if (config.threads < 1) {
    throw std::invalid_argument("threads: must be at least 1");
  }
  if (config.quantize_wait && config.quadrupole_over_omega <= 0) {
    throw std::invalid_argument(
        "quadrupole_over_omega: must be positive when quantize_wait is on");
  }
}

std::string canonical_config(const SweepConfig& config) {
  nlohmann::json doc;
  doc["experiment"] = config.experiment;
  doc["spin_twice"] = config.spin_twice;
  doc["gamma_n"] = config.gamma_n;
  doc["gamma_e"] = config.gamma_e;
  doc["t_min"] = format_value(config.t_min);
  doc["t_max"] = format_value(config.t_max);
  doc["t_count"] = config.t_count;
  doc["seed"] = config.seed;
  doc["quantize_wait"] = config.quantize_wait;
  doc["encoding_noise"] = config.encoding_noise;
  doc["quadrupole_over_omega"] = format_value(config.quadrupole_over_omega);
  doc["codewords"] = config.codewords_path;
  return doc.dump();
}

std::uint64_t config_hash(const SweepConfig& config) {
  const std::string text = canonical_config(config);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string resolved_output_path(const SweepConfig& config) {
  if (!config.encoding_noise) return config.out_path;
  const auto dot = config.out_path.rfind('.');
  if (dot == std::string::npos) return config.out_path + "-encoding-noise";
  return config.out_path.substr(0, dot) + "-encoding-noise" +
         config.out_path.substr(dot);
}

namespace {

ProtocolOptions protocol_options(const SweepConfig& config) {
  ProtocolOptions options;
  options.include_encoding_noise = config.encoding_noise;
  options.quadrupole_over_omega =
      config.quantize_wait ? config.quadrupole_over_omega : 0.0;
  return options;
}

std::vector<Task> build_tasks(const SweepConfig& config, RunResult& result) {
  const std::vector<double> x_grid =
      log_spaced(config.t_min, config.t_max, config.t_count);
  std::vector<Task> tasks;
  std::size_t row = 0;
  const auto add_task = [&](std::size_t rows,
                            std::function<PointEvaluator()> prepare) {
    tasks.push_back({row, rows, std::move(prepare)});
    row += rows;
  };

  if (config.experiment == "ideal-fig3") {
    result.columns = {"code_id",           "spin",
                      "gamma_n_t",         "fidelity",
                      "infidelity",        "baseline_fidelity",
                      "baseline_infidelity"};
    for (int twice : config.spin_twice) {
      add_task(x_grid.size(), [twice, x_grid]() -> PointEvaluator {
        const CodeSpec code = maus_code(HalfInteger{twice});
        return [twice, x_grid, code](std::size_t i) -> std::vector<double> {
          const double x = x_grid[i];
          const double fid = ideal_corrected_fidelity(code, x);
          const double base = breakeven_baseline(1.0, x);
          return {0.0, 0.5 * twice, x, fid, 1.0 - fid, base, 1.0 - base};
        };
      });
    }
    if (!config.codewords_path.empty()) {
      const std::string path = config.codewords_path;
      add_task(x_grid.size(), [path, x_grid]() -> PointEvaluator {
        const Matrix encode = load_qudit_codewords(path);
        return [encode, x_grid](std::size_t i) -> std::vector<double> {
          const double x = x_grid[i];
          const auto curve = minimal_qudit_fidelity_curve(encode, 1.0, {x});
          const double fid = curve.front().fidelity;
          const double base = breakeven_baseline(1.0, x);
          return {1.0, 2.5, x, fid, 1.0 - fid, base, 1.0 - base};
        };
      });
    }
  } else if (config.experiment == "protocol-fig4") {
    result.columns = {"spin",
                      "gamma_n",
                      "gamma_e",
                      "gamma_n_t",
                      "corrected_infidelity",
                      "uncorrected_infidelity",
                      "ratio"};
    const ProtocolOptions options = protocol_options(config);
    for (int twice : config.spin_twice) {
      for (double gn : config.gamma_n) {
        for (double ge : config.gamma_e) {
          add_task(x_grid.size(),
                   [twice, gn, ge, options, x_grid]() -> PointEvaluator {
                     auto sim = std::make_shared<CycleSimulator>(
                         HalfInteger{twice}, NoiseParams{gn, ge}, options);
                     return [twice, gn, ge, x_grid,
                             sim](std::size_t i) -> std::vector<double> {
                       const double x = x_grid[i];
                       const CycleResult cycle = sim->run(x / gn);
                       const double corrected =
                           1.0 - cycle.logical.entanglement_fidelity();
                       const double uncorrected =
                           1.0 - breakeven_baseline(1.0, x);
                       return {0.5 * twice, gn,          ge,
                               x,           corrected,   uncorrected,
                               uncorrected / corrected};
                     };
                   });
        }
      }
    }
  } else if (config.experiment == "breakeven-fig5a" ||
             config.experiment == "breakeven-fig5b") {
    result.columns = {"gamma_n",
                      "gamma_e",
                      "gamma_n_t",
                      "corrected_fidelity",
                      "baseline_fidelity",
                      "beats_breakeven",
                      "margin"};
    const ProtocolOptions options = protocol_options(config);
    const int twice = config.spin_twice.front();
    std::vector<std::pair<double, double>> rates;
    if (config.experiment == "breakeven-fig5a") {
      for (double ge : config.gamma_e) {
        rates.emplace_back(config.gamma_n.front(), ge);
      }
    } else {
      for (double gn : config.gamma_n) {
        rates.emplace_back(gn, config.gamma_e.front());
      }
    }
    for (const auto& [gn, ge] : rates) {
      add_task(x_grid.size(),
               [twice, gn, ge, options, x_grid]() -> PointEvaluator {
                 auto sim = std::make_shared<CycleSimulator>(
                     HalfInteger{twice}, NoiseParams{gn, ge}, options);
                 return [gn, ge, x_grid,
                         sim](std::size_t i) -> std::vector<double> {
                   const double x = x_grid[i];
                   const CycleResult cycle = sim->run(x / gn);
                   const double fid = cycle.logical.entanglement_fidelity();
                   const double base = breakeven_baseline(1.0, x);
                   return {gn,   ge,
                           x,    fid,
                           base, fid >= base ? 1.0 : 0.0,
                           fid - base};
                 };
               });
    }
  } else if (config.experiment == "pulse-fidelity") {
    result.columns = {"kind", "gamma_over_omega", "transition", "fidelity"};
    const HalfInteger spin{config.spin_twice.front()};
    for (double gn : config.gamma_n) {
      for (int j = 1; j <= spin.twice(); ++j) {
        add_task(1, [spin, gn, j]() -> PointEvaluator {
          return [spin, gn, j](std::size_t) -> std::vector<double> {
            return {0.0, gn, static_cast<double>(j),
                    nuclear_pi_pulse_fidelity(spin, gn, j)};
          };
        });
      }
    }
    for (double ge : config.gamma_e) {
      add_task(1, [ge]() -> PointEvaluator {
        return [ge](std::size_t) -> std::vector<double> {
          return {1.0, ge, 0.0, electron_pi_pulse_fidelity(ge)};
        };
      });
    }
  } else if (config.experiment == "spectrum") {
    result.columns = {"kind", "index", "frequency_MHz"};
    const HalfInteger spin{config.spin_twice.front()};
    const std::size_t rows = static_cast<std::size_t>(2 * spin.twice() + 1);
    add_task(rows, [spin]() -> PointEvaluator {
      const PhysicalParams params = arsenic_params();
      return [spin, params](std::size_t i) -> std::vector<double> {
        const std::size_t nmr_rows = static_cast<std::size_t>(spin.twice());
        if (i < nmr_rows) {
          const int j = static_cast<int>(i) + 1;
          return {0.0, static_cast<double>(j), nmr_frequency(params, spin, j)};
        }
        const int tk = spin.twice() - 2 * static_cast<int>(i - nmr_rows);
        return {1.0, 0.5 * tk,
                1e3 * esr_frequency(params, spin, HalfInteger{tk})};
      };
    });
  } else {
    throw std::invalid_argument("experiment: unknown name");
  }

  result.rows.resize(row);
  return tasks;
}

}  // namespace

RunResult run_experiment(const SweepConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  std::vector<Task> tasks = build_tasks(config, result);

  const auto run_task = [&](const Task& task) {
    PointEvaluator evaluate;
    try {
      evaluate = task.prepare();
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < task.row_count; ++i) {
        result.rows[task.first_row + i].error = e.what();
      }
      return;
    }
    for (std::size_t i = 0; i < task.row_count; ++i) {
      PointRecord& rec = result.rows[task.first_row + i];
      try {
        if (config.fault_injector) config.fault_injector(task.first_row + i);
        rec.values = evaluate(i);
        rec.ok = true;
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    }
  };

  std::atomic<std::size_t> next{0};
  const int threads =
      std::min<int>(config.threads, static_cast<int>(tasks.size()));
  const auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      run_task(tasks[idx]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const PointRecord& rec : result.rows) {
    if (!rec.ok) ++result.failures;
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::string format_csv(const RunResult& result) {
  std::ostringstream out;
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out << ',';
    out << result.columns[c];
  }
  out << ",error\n";
  for (const PointRecord& rec : result.rows) {
    if (rec.ok) {
      for (std::size_t c = 0; c < rec.values.size(); ++c) {
        if (c) out << ',';
        out << format_value(rec.values[c]);
      }
      out << ",\n";
    } else {
      for (std::size_t c = 0; c < result.columns.size(); ++c) out << ',';
      std::string msg = rec.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out << msg << '\n';
    }
  }
  return out.str();
}

std::string emit_metadata(const SweepConfig& config, const RunResult& result) {
  nlohmann::json doc;
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(config_hash(config)));
  doc["config_hash"] = hash_hex;
  doc["config"] = nlohmann::json::parse(canonical_config(config));
  doc["conventions"] = {
      {"superoperator", "column-stacking"},
      {"rotation_sign", "exp(-i*angle*generator)"},
      {"rates", "units of Omega"},
      {"quantize_wait", config.quantize_wait ? "nearest multiple of 4pi/Q"
                                             : "off"},
  };
  doc["wall_seconds"] = result.wall_seconds;
  doc["failures"] = result.failures;
  nlohmann::json status = nlohmann::json::array();
  for (const PointRecord& rec : result.rows) {
    if (rec.ok) {
      status.push_back("ok");
    } else if (rec.error.empty()) {
      status.push_back("incomplete");
    } else {
      status.push_back(rec.error);
    }
  }
  doc["points"] = status;
  return doc.dump(2);
}

std::string write_results(const SweepConfig& config, const RunResult& result) {
  const std::string path = resolved_output_path(config);
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << format_csv(result);
  }
  {
    std::ofstream meta(path + ".meta.json");
    if (!meta) {
      throw std::runtime_error("cannot write metadata sidecar for: " + path);
    }
    meta << emit_metadata(config, result);
  }
  return path;
}

}  // namespace maus
