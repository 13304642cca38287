#include "geoach/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "geoach/aux_processes.hpp"
#include "geoach/error.hpp"
#include "geoach/offline.hpp"

namespace geoach {

Mode parse_mode(std::string_view name) {
  if (name == "online") return Mode::online;
  if (name == "offline") return Mode::offline;
  if (name == "ballsbins") return Mode::ballsbins;
  if (name == "coupon") return Mode::coupon;
  if (name == "vertex") return Mode::vertex;
  throw ParameterError("unknown mode: " + std::string(name));
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::online: return "online";
    case Mode::offline: return "offline";
    case Mode::ballsbins: return "ballsbins";
    case Mode::coupon: return "coupon";
    case Mode::vertex: return "vertex";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string text(trim(value));
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("bad number for " + std::string(key) + ": '" + text + "'");
  }
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  const std::string_view text = trim(value);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError("bad integer for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view raw_key, std::string_view raw_value) {
  std::string key(trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string_view value = trim(raw_value);

  if (key == "mode") {
    config.mode = parse_mode(value);
  } else if (key == "n" || key == "bins" || key == "N") {
    config.n = parse_uint(key, value);
  } else if (key == "c") {
    config.c_values.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      config.c_values.push_back(parse_double(key, rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } else if (key == "r") {
    config.r = parse_double(key, value);
  } else if (key == "strategy" || key == "policy") {
    config.strategy = std::string(value);
  } else if (key == "K") {
    config.params.K = parse_double(key, value);
  } else if (key == "h") {
    config.params.h = static_cast<int>(parse_uint(key, value));
  } else if (key == "offline_h") {
    config.offline_h = static_cast<int>(parse_uint(key, value));
  } else if (key == "list_capacity") {
    config.params.list_capacity = parse_uint(key, value);
  } else if (key == "slack") {
    config.params.slack = static_cast<int>(parse_uint(key, value));
  } else if (key == "h_exact") {
    config.params.h_exact = static_cast<int>(parse_uint(key, value));
  } else if (key == "eps") {
    config.params.eps = parse_double(key, value);
  } else if (key == "target_cx") {
    config.params.target_cx = parse_double(key, value);
  } else if (key == "target_cy") {
    config.params.target_cy = parse_double(key, value);
  } else if (key == "rounds") {
    config.rounds = parse_uint(key, value);
  } else if (key == "stop" || key == "coupon_stop") {
    config.coupon_stop = parse_uint(key, value);
  } else if (key == "m") {
    config.m = parse_uint(key, value);
  } else if (key == "trials") {
    config.trials = parse_uint(key, value);
  } else if (key == "seed" || key == "base_seed") {
    config.base_seed = parse_uint(key, value);
  } else if (key == "workers") {
    config.workers = static_cast<unsigned>(parse_uint(key, value));
  } else if (key == "out") {
    config.out = std::string(value);
  } else if (key == "format") {
    if (value == "csv") {
      config.format = OutputFormat::csv;
    } else if (value == "json") {
      config.format = OutputFormat::json;
    } else {
      throw ParameterError("format must be csv or json");
    }
  } else if (key == "samples") {
    config.samples = parse_uint(key, value);
  } else {
    throw ParameterError("unknown setting: " + key);
  }
}

void load_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(config, text.substr(0, eq), text.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw ParameterError("trials must be at least 1");
  if (config.n < 1) throw ParameterError("n must be at least 1");
  if (config.mode == Mode::online || config.mode == Mode::offline) {
    if (config.r.has_value() == !config.c_values.empty()) {
      throw ParameterError("give exactly one of c or r");
    }
    for (double c : config.c_values) radius_from_c(config.mode, c, config.n);
  }
  if (config.mode == Mode::coupon && (config.coupon_stop < 1 || config.coupon_stop >= config.n)) {
    throw ParameterError("coupon mode needs 1 <= stop < n");
  }
}

double radius_from_c(Mode mode, double c, std::uint64_t n) {
  if (!(c > 0.0)) throw ParameterError("c must be positive");
  const double nn = static_cast<double>(n);
  if (mode == Mode::online) {
    if (n < 4) throw ParameterError("online radius needs n >= 4");
    return std::cbrt(c / (nn * std::log2(std::log2(nn))));
  }
  if (mode == Mode::offline) {
    if (n < 1) throw ParameterError("n must be positive");
    return std::cbrt(c / nn);
  }
  throw ParameterError("radius_from_c applies to online and offline modes only");
}

// ---------------------------------------------------------------------------
// Trials

namespace {

double trial_radius(const ExperimentConfig& config, std::size_t c_index) {
  if (config.r) return *config.r;
  return radius_from_c(config.mode, config.c_values.at(c_index), config.n);
}

}  // namespace

RunRecord run_trial(const ExperimentConfig& config, std::size_t c_index, std::uint64_t trial) {
  const std::uint64_t seed = derive_seed(config.base_seed, trial, c_index);
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;

  switch (config.mode) {
    case Mode::online: {
      const double r = trial_radius(config, c_index);
      auto strategy = make_strategy(config.strategy, config.params, config.n, r);
      record = run_online(config.n, r, *strategy, seed, OnlineOptions{config.samples});
      break;
    }
    case Mode::offline: {
      const double r = trial_radius(config, c_index);
      RngStream pair_rng(seed, 0);
      RngStream choice_rng(seed, 1);
      const PairSet pairs = sample_pairs(config.n, pair_rng);
      const Barrier barrier = build_barrier(config.params.K, config.offline_h, r);
      const OfflineResult solved = solve_offline_barrier(pairs, barrier, r, choice_rng);
      OccupancyGrid occupancy(r);
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const Point p = solved.selection[t] == Pick::first ? pairs[t].first : pairs[t].second;
        const Cell box = box_of(p, r).cell();
        occupancy.mark(box.i, box.j);
      }
      record.r = r;
      record.strategy = "offline-barrier";
      record.largest_size = solved.report.largest_component;
      record.largest_fraction = static_cast<double>(record.largest_size) / static_cast<double>(config.n);
      record.barrier_crossed = barrier_crossed(barrier, occupancy);
      record.strategy_failed = !solved.report.orientable || !solved.report.max_within_four;
      break;
    }
    case Mode::ballsbins: {
      RngStream rng(seed, 0);
      const std::uint64_t rounds = config.rounds > 0 ? config.rounds : config.n;
      const auto result = run_balls_bins(config.n, rounds, parse_bins_policy(config.strategy), rng);
      record.strategy = to_string(parse_bins_policy(config.strategy));
      record.largest_size = result.max_load;
      record.largest_fraction = static_cast<double>(result.max_load) / static_cast<double>(config.n);
      break;
    }
    case Mode::coupon: {
      RngStream rng(seed, 0);
      const std::uint64_t boxes = run_coupon_2ccc(config.n, config.coupon_stop, rng);
      const double bound = 2.0 * static_cast<double>(config.n) * static_cast<double>(config.n) /
                           static_cast<double>(config.coupon_stop);
      record.strategy = "2ccc";
      record.largest_size = boxes;
      record.largest_fraction = static_cast<double>(boxes) / bound;
      record.strategy_failed = static_cast<double>(boxes) > bound;
      break;
    }
    case Mode::vertex: {
      const std::uint64_t m = config.m > 0 ? config.m : 4 * config.n;
      const VertexStrategy vs = parse_vertex_strategy(config.strategy);
      const auto result = run_vertex_achlioptas(config.n, m, vs, seed);
      record.strategy = to_string(vs);
      record.largest_size = result.largest;
      record.largest_fraction = static_cast<double>(result.largest) / static_cast<double>(config.n);
      break;
    }
  }

  record.mode = to_string(config.mode);
  record.n = config.n;
  record.seed = seed;
  if (!config.c_values.empty() && (config.mode == Mode::online || config.mode == Mode::offline)) {
    record.c = config.c_values.at(c_index);
  }
  record.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return record;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

bool SweepResult::any_failed() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; });
}

SweepResult sweep(const ExperimentConfig& config) {
  validate(config);
  const std::size_t c_count = config.c_values.empty() ? 1 : config.c_values.size();
  const std::size_t jobs = c_count * config.trials;

  SweepResult result;
  result.rows.resize(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t job = next.fetch_add(1); job < jobs; job = next.fetch_add(1)) {
      SweepRow& row = result.rows[job];
      row.c_index = job / config.trials;
      row.trial = job % config.trials;
      try {
        row.record = run_trial(config, row.c_index, row.trial);
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
        row.record.mode = to_string(config.mode);
        row.record.n = config.n;
        row.record.strategy = config.strategy;
        row.record.seed = derive_seed(config.base_seed, row.trial, row.c_index);
        if (!config.c_values.empty()) row.record.c = config.c_values[row.c_index];
      }
    }
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(config.workers, static_cast<unsigned>(jobs)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t ci = 0; ci < c_count; ++ci) {
    std::vector<double> fractions;
    for (const SweepRow& row : result.rows) {
      if (row.c_index == ci && !row.failed) fractions.push_back(row.record.largest_fraction);
    }
    SweepSummary s;
    if (!config.c_values.empty()) s.c = config.c_values[ci];
    s.runs = fractions.size();
    s.median = quantile(fractions, 0.5);
    s.q1 = quantile(fractions, 0.25);
    s.q3 = quantile(fractions, 0.75);
    result.summary.push_back(s);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string fmt_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    const RunRecord& rec = row.record;
    out << rec.mode << ',' << rec.n << ',' << (rec.c ? fmt_double(*rec.c, "%.10g") : "") << ','
        << (rec.r > 0.0 ? fmt_double(rec.r, "%.10g") : "") << ',' << rec.strategy << ',' << rec.seed << ',';
    if (row.failed) {
      out << "failed,failed,,,";
    } else {
      out << rec.largest_size << ',' << fmt_double(rec.largest_fraction, "%.8f") << ','
          << (rec.barrier_crossed ? 1 : 0) << ',' << (rec.strategy_failed ? 1 : 0) << ',';
    }
    out << fmt_double(rec.runtime_ms, "%.3f") << '\n';
  }
  for (const SweepSummary& s : result.summary) {
    out << "# summary,c=" << (s.c ? fmt_double(*s.c, "%.10g") : "") << ",runs=" << s.runs
        << ",median=" << fmt_double(s.median, "%.8f") << ",q1=" << fmt_double(s.q1, "%.8f")
        << ",q3=" << fmt_double(s.q3, "%.8f") << '\n';
  }
}

void write_json(std::ostream& out, const SweepResult& result, const ExperimentConfig& config) {
  using nlohmann::json;
  json doc;
  doc["mode"] = to_string(config.mode);
  doc["base_seed"] = config.base_seed;
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    const RunRecord& rec = row.record;
    json j;
    j["mode"] = rec.mode;
    j["n"] = rec.n;
    j["c"] = rec.c ? json(*rec.c) : json(nullptr);
    j["r"] = rec.r;
    j["strategy"] = rec.strategy;
    j["seed"] = rec.seed;
    j["trial"] = row.trial;
    j["failed"] = row.failed;
    if (row.failed) {
      j["error"] = row.error;
    } else {
      j["largest_size"] = rec.largest_size;
      j["largest_fraction"] = rec.largest_fraction;
      j["barrier_crossed"] = rec.barrier_crossed;
      j["strategy_failed"] = rec.strategy_failed;
      if (!rec.danger_mode.empty()) {
        j["barrier"] = {{"bad_blocks", rec.bad_blocks},
                        {"dangerous_blocks", rec.dangerous_blocks},
                        {"max_slot_plays", rec.max_slot_plays},
                        {"slack", rec.slack},
                        {"list_capacity", rec.list_capacity},
                        {"danger_mode", rec.danger_mode}};
      }
      if (!rec.time_series.empty()) {
        json series = json::array();
        for (const auto& [round, largest] : rec.time_series) series.push_back({round, largest});
        j["time_series"] = std::move(series);
      }
    }
    j["runtime_ms"] = rec.runtime_ms;
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  json summary = json::array();
  for (const SweepSummary& s : result.summary) {
    summary.push_back({{"c", s.c ? json(*s.c) : json(nullptr)},
                       {"runs", s.runs},
                       {"median", s.median},
                       {"q1", s.q1},
                       {"q3", s.q3}});
  }
  doc["summary"] = std::move(summary);
  out << doc.dump(2) << '\n';
}

void write_result(std::ostream& out, const SweepResult& result, const ExperimentConfig& config) {
  if (config.format == OutputFormat::json) {
    write_json(out, result, config);
  } else {
    write_csv(out, result);
  }
}

}  // namespace geoach
