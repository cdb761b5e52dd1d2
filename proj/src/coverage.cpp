#include "cdlab/coverage.hpp"

#include <mutex>

namespace cdlab::coverage {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::set<std::string>& registry() {
  static std::set<std::string> s;
  return s;
}

std::atomic<unsigned> current_generation{1};

}  // namespace

const std::vector<std::string>& required_ops() {
  static const std::vector<std::string> ops{
      // group_core
      "build_group", "generated_subgroup", "left_cosets", "free_mul", "free_inverse", "free_ball",
      // measure_algebra
      "convolve", "reflect", "convolution_power", "cesaro_average", "tv_norm", "tv_distance",
      "haar_on_subgroup", "weak_star_decay",
      // markov_operator
      "right_markov_matrix", "predual_action", "conjugation_operator", "gspace_markov_matrix",
      // harmonic_solver
      "harmonic_space", "trivial_solution_space", "commutant", "cesaro_projection", "diamond_product",
      "choquet_deny_verdict", "l1_harmonic_triviality",
      // ideal_lab
      "j_mu_basis", "j_mu_pi_basis", "l1_distance", "derriennic_trace", "approximate_identity", "kappa",
      "nc_convolve", "left_ideal_check",
      // boundary_walk
      "sample_path", "harmonic_measure_cylinder", "poisson_extension", "martingale_convergence_check",
      "diamond_vs_pointwise_mc", "stationary_measure", "subharmonic_check",
      // cli_experiments
      "run", "catalog"};
  return ops;
}

void reset() {
  std::lock_guard lock(registry_mutex());
  registry().clear();
  current_generation.fetch_add(1, std::memory_order_relaxed);
}

unsigned generation() { return current_generation.load(std::memory_order_relaxed); }

void record(const char* op) {
  std::lock_guard lock(registry_mutex());
  registry().insert(op);
}

std::set<std::string> recorded() {
  std::lock_guard lock(registry_mutex());
  return registry();
}

std::vector<std::string> missing() {
  const auto seen = recorded();
  std::vector<std::string> out;
  for (const auto& op : required_ops())
    if (!seen.count(op)) out.push_back(op);
  return out;
}

}  // namespace cdlab::coverage
