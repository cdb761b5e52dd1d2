#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cdlab/experiments.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> parallel;
  std::optional<long> paths;
  std::optional<long> n;
};

cdlab::json load_config(const Flags& f, const std::string& scenario) {
  cdlab::json raw = cdlab::json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw cdlab::ConfigError("--config", "cannot open " + f.config);
    try {
      raw = cdlab::json::parse(in, nullptr, true, true);
    } catch (const cdlab::json::parse_error& e) {
      throw cdlab::ConfigError("--config", e.what());
    }
    if (raw.contains("scenario") && raw.at("scenario") != scenario)
      throw cdlab::ConfigError("scenario", "config file is for '" + raw.at("scenario").dump() + "', not '" + scenario + "'");
  }
  raw["scenario"] = scenario;
  if (f.seed) raw["seed"] = *f.seed;
  if (f.parallel) raw["parallel"] = *f.parallel;
  if (f.out)
    raw["out"] = *f.out;
  else if (const char* env = std::getenv("CDLAB_OUT_DIR"); env && *env)
    raw["out"] = env;
  if (f.paths) {
    if (scenario != "freewalk") throw cdlab::ConfigError("--paths", "only the freewalk scenario takes paths");
    raw["paths"] = *f.paths;
  }
  if (f.n) {
    if (scenario == "harmonic" || scenario == "stationary" || scenario == "suite")
      throw cdlab::ConfigError("--n", "the " + scenario + " scenario has no size parameter");
    raw["n"] = *f.n;
  }
  return raw;
}

void print_record(const cdlab::RunRecord& r) {
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ");
    if (c.criterion > 0) std::cout << "[" << c.criterion << "] ";
    std::cout << c.name << ": " << cdlab::format_double(c.value) << ' ' << c.relation << ' '
              << cdlab::format_double(c.bound) << '\n';
  }
  for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
  std::cout << "verdict: " << (r.verdict ? "pass" : "fail") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choquet-Deny laboratory: harmonic functions, Cesaro projections and random walks"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"harmonic", "harmonic space versus trivial solutions for a measure on a finite group"},
      {"cesaro", "Cesaro averages and the projection onto harmonic functions"},
      {"derriennic", "Derriennic limit versus the LP quotient norm"},
      {"ncconv", "non-commutative convolution identities on random operators"},
      {"freewalk", "Monte Carlo on the free group boundary"},
      {"stationary", "stationary measure of a finite G-space"},
      {"decay", "weak* decay of convolution powers on Z"},
      {"suite", "every acceptance check with a coverage assertion"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--out", flags.out, "output directory (default: $CDLAB_OUT_DIR or .)");
    sub->add_option("--parallel", flags.parallel, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--paths", flags.paths, "Monte Carlo paths (freewalk)")->check(CLI::PositiveNumber);
    sub->add_option("--n", flags.n, "scenario size: steps, horizon or number of trials")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  const std::string scenario = app.get_subcommands().front()->get_name();
  try {
    const auto config = cdlab::config_from_json(load_config(flags, scenario));
    const auto record = cdlab::run(config);
    print_record(record);
    return record.verdict ? kExitPass : kExitCheckFailure;
  } catch (const cdlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const cdlab::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
