#ifndef CDLAB_BOUNDARY_HPP
#define CDLAB_BOUNDARY_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cdlab/free_group.hpp"
#include "cdlab/markov.hpp"
#include "cdlab/measure.hpp"
#include "cdlab/rng.hpp"

namespace cdlab {

/// A sampled right random walk: positions[m] = start * Y_1 * ... * Y_m.
template <typename Element, typename Increment = Element>
struct WalkPath {
  Element start;
  std::vector<Increment> increments;
  std::vector<Element> positions;
};

/// Law of the increments of a walk on F_k, as weights on the letters
/// +1, -1, +2, -2, ..., +k, -k (in that order).
class FreeLaw {
public:
  FreeLaw(int rank, std::vector<double> weights);
  /// Uniform on the 2k generators and their inverses.
  static FreeLaw simple(int rank);

  int rank() const { return rank_; }
  bool is_simple() const;
  int letter(int slot) const { return slot % 2 == 0 ? slot / 2 + 1 : -(slot / 2 + 1); }
  int sample(Engine& eng) const;
  const std::vector<double>& weights() const { return weights_; }

private:
  int rank_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Walks with a fixed seed; increments are i.i.d. with law mu.
WalkPath<int> sample_path(const Measure<double>& mu, int start, int n, std::uint64_t seed);
WalkPath<long> sample_path(const Measure<double>& mu, long start, int n, std::uint64_t seed);
WalkPath<FreeWord, int> sample_path(const FreeLaw& law, const FreeWord& start, int n, std::uint64_t seed);

/// Boundary cylinder [w]: infinite reduced words beginning with w.
class Cylinder {
public:
  /// Throws ConstructionError unless `prefix` is reduced and nonempty.
  Cylinder(int rank, std::vector<int> prefix);
  static Cylinder parse(int rank, const std::string& text);

  int rank() const { return word_.rank(); }
  const FreeWord& word() const { return word_; }
  int length() const { return word_.length(); }
  bool contains_prefix_of(const FreeWord& g) const;

private:
  FreeWord word_;
};

/// nu([w]) = (1/(2k)) (1/(2k-1))^(|w|-1) for simple random walk on F_k.
double harmonic_measure_cylinder(const Cylinder& w);

/// h(g) = nu_g([w]), the probability that simple random walk started at g
/// converges into [w]. With q = 2k-1 and d the tree distance from g to w:
///   g in the shadow of w (w a prefix of g):  1 - q^-d / (2k)
///   otherwise:                               (q / (2k)) q^-d
double poisson_extension(const Cylinder& w, const FreeWord& g);

/// Options shared by the Monte Carlo estimators on F_k. Paths are grouped in
/// fixed blocks, each with its own stream make_stream(seed, block), so the
/// result does not depend on `workers`.
struct MonteCarloOptions {
  int n = 100;
  long paths = 10000;
  std::uint64_t seed = kDefaultSeed;
  /// Horizon margin: a path is conclusive when |X_n| >= |w| + margin and
  /// |X_m| >= |w| for the last `margin` steps.
  int margin = 10;
  int workers = 1;
};

inline constexpr long kPathsPerBlock = 1024;

struct CylinderEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double exact = 0.0;
  long n_paths = 0;
  long inconclusive = 0;
  std::uint64_t seed = 0;
};

/// Frequency of limit words starting with w among conclusive paths.
std::vector<CylinderEstimate> cylinder_frequencies(const std::vector<Cylinder>& cylinders, const FreeLaw& law,
                                                   const MonteCarloOptions& options);

struct MartingaleReport {
  long n_paths = 0;
  long conclusive = 0;
  long inconclusive = 0;
  /// Paths with |h(X_n) - 1[limit in w]| < threshold (conclusive ones only).
  long agreement = 0;
  double threshold = 1e-3;
  double conclusive_fraction = 0.0;
  double agreement_fraction = 0.0;
  std::uint64_t seed = 0;
};

/// Compares h(X_n) with the indicator of the limit direction, h the Poisson
/// extension of [w].
MartingaleReport martingale_convergence_check(const Cylinder& w, const MonteCarloOptions& options,
                                              double threshold = 1e-3);

struct DiamondReport {
  double estimate = 0.0;  ///< mean of h(X_n)^2 over paths, i.e. pi(mu^n)(h^2)(e)
  double stderr_ = 0.0;
  double diamond_value = 0.0;    ///< (h <> h)(e) = nu([w])
  double pointwise_value = 0.0;  ///< h(e)^2
  long n_paths = 0;
  std::uint64_t seed = 0;
};

DiamondReport diamond_vs_pointwise_mc(const Cylinder& w, const MonteCarloOptions& options);

struct MartingaleStepReport {
  long transitions = 0;
  double mean_increment = 0.0;  ///< mean of h(X_{m+1}) - h(X_m)
  double stderr_ = 0.0;
  /// Least-squares slope of the increment against h(X_m), and its stderr.
  double slope = 0.0;
  double slope_stderr = 0.0;
};

/// One-step martingale regression over `options.paths` paths of
/// `options.n` steps each.
MartingaleStepReport martingale_step_regression(const Cylinder& w, const MonteCarloOptions& options);

/// Sample mean of |X_n| for walks of law `law` from the identity.
double mean_word_length(const FreeLaw& law, const MonteCarloOptions& options);

struct StationaryMeasure {
  VectorXr measure;         ///< the returned solution
  VectorXr eigen_solution;  ///< empty when the fixed space is not 1-dimensional
  VectorXr power_solution;
  double eigen_residual = 0.0;  ///< ||P^T s - s||_1
  double power_residual = 0.0;
  double residual = 0.0;
  Eigen::Index fixed_space_dim = 0;
  int iterations = 0;
  bool converged = false;
};

/// sigma with pi(mu) sigma = sigma on a finite G-space. Solved by the
/// eigenvalue-1 kernel of P^T and by push-forward iteration from uniform
/// (using the lazy chain (I + P^T)/2, which has the same fixed points).
StationaryMeasure stationary_measure(const GSpaceAction& action, const Measure<double>& mu, double tol = 1e-14,
                                     int max_iterations = 100000);

/// max over `samples` of h(g) - mean of h over the SRW neighbours of g.
double free_subharmonic_violation(const std::function<double(const FreeWord&)>& h,
                                  const std::vector<FreeWord>& samples);

/// max over g of |h(g) - mean of h over the neighbours of g|.
double free_harmonic_residual(const std::function<double(const FreeWord&)>& h,
                              const std::vector<FreeWord>& samples);

}  // namespace cdlab

#endif  // CDLAB_BOUNDARY_HPP
