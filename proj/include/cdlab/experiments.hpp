#ifndef CDLAB_EXPERIMENTS_HPP
#define CDLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cdlab/io.hpp"
#include "cdlab/measure.hpp"
#include "cdlab/rng.hpp"

namespace cdlab {

struct CatalogEntry {
  std::string id;
  std::string description;
  Measure<double> mu;
};

/// Built-in (group, measure) pairs, in a fixed order.
std::vector<CatalogEntry> catalog();
/// Throws ConfigError for unknown ids.
CatalogEntry catalog_entry(const std::string& id);

enum class Scenario { harmonic, cesaro, derriennic, ncconv, freewalk, stationary, decay, suite };

const std::vector<std::string>& scenario_names();
Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario s);

/// A validated configuration. `params` holds every scenario parameter with
/// defaults filled in; it is echoed verbatim into the RunRecord.
struct ExperimentConfig {
  Scenario scenario = Scenario::suite;
  std::uint64_t seed = kDefaultSeed;
  int parallel = 1;
  std::filesystem::path out_dir = ".";
  json params = json::object();
};

/// Validates `raw` and fills defaults. Throws ConfigError naming the field.
ExperimentConfig config_from_json(const json& raw);
json config_to_json(const ExperimentConfig& c);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  /// How value is compared with bound: "<", "<=", ">", ">=" or "==".
  std::string relation = "<";
  bool pass = false;
  /// Acceptance criterion number, 0 for supporting checks.
  int criterion = 0;
};

CheckResult make_check(std::string name, double value, std::string relation, double bound, int criterion = 0);

struct RunRecord {
  json config;
  std::string started_at;
  std::string finished_at;
  std::vector<CheckResult> checks;
  json outputs = json::object();
  std::vector<std::filesystem::path> files;
  bool verdict = false;
};

json to_json(const RunRecord& r, bool include_timestamps = true);

/// Executes the scenario, writes <out>/<scenario>.json and any CSV series.
/// Throws ConfigError for invalid parameters and CapacityError when a
/// computation exceeds a size limit.
RunRecord run(const ExperimentConfig& config);

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  int parallel = 1;
  /// Scratch directory for the determinism reruns.
  std::filesystem::path scratch = std::filesystem::temp_directory_path() / "cdlab-suite";
};

/// Every acceptance check, tagged with its criterion number, followed by
/// supporting checks and the coverage assertion.
std::vector<CheckResult> acceptance_checks(const SuiteOptions& options);

struct CriterionSummary {
  int criterion = 0;
  std::string title;
  int checks = 0;
  int failed = 0;
  bool pass() const { return failed == 0 && checks > 0; }
};

const std::vector<std::string>& criterion_titles();
std::vector<CriterionSummary> summarize(const std::vector<CheckResult>& checks);

}  // namespace cdlab

#endif  // CDLAB_EXPERIMENTS_HPP
