// harness.hpp: experiment configuration, parallel sweeps and result output
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoach/strategies.hpp"

namespace geoach {

enum class Mode { online, offline, ballsbins, coupon, vertex };

Mode parse_mode(std::string_view name);
const char* to_string(Mode mode);

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  Mode mode = Mode::online;
  std::uint64_t n = 10000;
  std::vector<double> c_values;  // exactly one of c_values / r
  std::optional<double> r;
  std::string strategy = "random";
  StrategyParams params;
  int offline_h = 100;
  std::uint64_t rounds = 0;         // ballsbins; 0 means n
  std::uint64_t coupon_stop = 100;  // coupon: stop with this many types missing
  std::uint64_t m = 0;              // vertex: edges of G(n, m); 0 means 4n
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 1;
  unsigned workers = 1;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
  std::size_t samples = 100;
};

// Applies one key=value setting (keys as in the config file, e.g. "n",
// "c", "strategy", "K", "list_capacity"). Throws ParameterError on unknown
// keys or malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Flat key=value file; blank lines and lines starting with '#' are ignored.
void load_config_file(ExperimentConfig& config, const std::string& path);

// Throws ParameterError when the configuration is inconsistent.
void validate(const ExperimentConfig& config);

// online:  r = (c / (n log2 log2 n))^(1/3), needs n >= 4
// offline: r = (c / n)^(1/3)
double radius_from_c(Mode mode, double c, std::uint64_t n);

struct SweepRow {
  std::size_t c_index = 0;
  std::uint64_t trial = 0;
  RunRecord record;
  bool failed = false;
  std::string error;
};

struct SweepSummary {
  std::optional<double> c;
  std::size_t runs = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (c_index, trial)
  std::vector<SweepSummary> summary;
  bool any_failed() const;
};

// One trial of the configured experiment. Seeds are derived from
// (base_seed, trial, c_index) only, so results do not depend on scheduling.
RunRecord run_trial(const ExperimentConfig& config, std::size_t c_index, std::uint64_t trial);

// trials x c-values runs on a pool of config.workers threads.
SweepResult sweep(const ExperimentConfig& config);

// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

inline constexpr std::string_view kCsvHeader =
    "mode,n,c,r,strategy,seed,largest_size,largest_fraction,barrier_crossed,strategy_failed,runtime_ms";

void write_csv(std::ostream& out, const SweepResult& result);
void write_json(std::ostream& out, const SweepResult& result, const ExperimentConfig& config);
void write_result(std::ostream& out, const SweepResult& result, const ExperimentConfig& config);

}  // namespace geoach
