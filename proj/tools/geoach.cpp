// geoach: command-line driver for the geometric Achlioptas experiments.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geoach/error.hpp"
#include "geoach/harness.hpp"

namespace {

struct Subcommand {
  CLI::App* app = nullptr;
  geoach::Mode mode = geoach::Mode::online;
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

// Every flag is collected as a string and applied through the same key=value
// path as the config file, so both accept the same spelling.
void add_setting(Subcommand& sub, const std::string& flag, const std::string& key, const std::string& help) {
  sub.app->add_option_function<std::string>(
      flag, [&sub, key](const std::string& value) { sub.overrides[key] = value; }, help);
}

void add_common(Subcommand& sub) {
  sub.app->add_option("--config", sub.config_path, "key=value configuration file");
  add_setting(sub, "--n", "n", "number of rounds / pairs / vertices / bins / coupon types");
  add_setting(sub, "--seed", "seed", "base seed (default: $GEOACH_SEED or 1)");
  add_setting(sub, "--trials", "trials", "independent trials per parameter value");
  add_setting(sub, "--workers", "workers", "worker threads");
  add_setting(sub, "--out", "out", "output file (default stdout)");
  add_setting(sub, "--format", "format", "csv or json");
}

void add_geometric(Subcommand& sub) {
  add_setting(sub, "--c", "c", "comma-separated c values");
  add_setting(sub, "--r", "r", "explicit radius (instead of c)");
  add_setting(sub, "--K", "K", "barrier budget");
}

void add_online(Subcommand& sub) {
  add_setting(sub, "--strategy", "strategy", "random | greedy | giant-maker | barrier");
  add_setting(sub, "--block-side", "h", "barrier block side in boxes");
  add_setting(sub, "--list-capacity", "list_capacity", "pseudo-danger list capacity (0: default)");
  add_setting(sub, "--slack", "slack", "empty boxes allowed on a dangerous path");
  add_setting(sub, "--h-exact", "h_exact", "largest h searched exactly");
  add_setting(sub, "--eps", "eps", "giant-maker target square slack");
  add_setting(sub, "--samples", "samples", "time-series samples per run");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric Achlioptas process experiments"};
  app.require_subcommand(1);

  std::vector<Subcommand> subs(6);
  subs[0] = {app.add_subcommand("run", "one online run configuration"), geoach::Mode::online, {}, {}};
  subs[1] = {app.add_subcommand("sweep", "online or offline sweep over c"), geoach::Mode::online, {}, {}};
  subs[2] = {app.add_subcommand("offline", "offline barrier construction"), geoach::Mode::offline, {}, {}};
  subs[3] = {app.add_subcommand("ballsbins", "two-choice balls and bins"), geoach::Mode::ballsbins, {}, {}};
  subs[4] = {app.add_subcommand("coupon", "two-choices coupon collector"), geoach::Mode::coupon, {}, {}};
  subs[5] = {app.add_subcommand("vertex", "vertex Achlioptas process on G(n, m)"), geoach::Mode::vertex, {}, {}};

  for (auto& sub : subs) add_common(sub);
  for (int k : {0, 1}) {
    add_geometric(subs[k]);
    add_online(subs[k]);
  }
  add_setting(subs[1], "--mode", "mode", "online or offline");
  add_geometric(subs[2]);
  add_setting(subs[2], "--block-side", "offline_h", "barrier block side in boxes");
  add_setting(subs[3], "--rounds", "rounds", "balls thrown (default n)");
  add_setting(subs[3], "--policy", "policy", "greedy | one-choice");
  add_setting(subs[4], "--stop", "stop", "stop when this many types are missing");
  add_setting(subs[5], "--m", "m", "edges of G(n, m) (default 4n)");
  add_setting(subs[5], "--strategy", "strategy", "random | min-degree | greedy-min-merge");

  CLI11_PARSE(app, argc, argv);

  const Subcommand* active = nullptr;
  for (const auto& sub : subs) {
    if (sub.app->parsed()) active = &sub;
  }

  geoach::ExperimentConfig config;
  config.mode = active->mode;
  if (active->mode == geoach::Mode::ballsbins) config.strategy = "greedy";
  try {
    if (const char* env = std::getenv("GEOACH_SEED")) geoach::apply_setting(config, "seed", env);
    if (!active->config_path.empty()) geoach::load_config_file(config, active->config_path);
    for (const auto& [key, value] : active->overrides) geoach::apply_setting(config, key, value);
    geoach::validate(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const geoach::SweepResult result = geoach::sweep(config);
  if (config.out.empty()) {
    geoach::write_result(std::cout, result, config);
  } else {
    std::ofstream out(config.out);
    if (!out) {
      std::cerr << "error: cannot write " << config.out << '\n';
      return 1;
    }
    geoach::write_result(out, result, config);
  }
  for (const auto& row : result.rows) {
    if (row.failed) std::cerr << "trial " << row.trial << " failed: " << row.error << '\n';
  }
  return result.any_failed() ? 2 : 0;
}
