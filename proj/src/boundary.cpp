#include "cdlab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "cdlab/harmonic.hpp"
#include "cdlab/coverage.hpp"

namespace cdlab {

namespace {

int sample_index(const std::vector<double>& cumulative, Engine& eng) {
  const double u = uniform01(eng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                   static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

std::vector<double> cumulative_weights(const VectorXr& w) {
  std::vector<double> c(static_cast<size_t>(w.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0) throw ConstructionError("sampling law has a negative weight");
    acc += w[i];
    c[static_cast<size_t>(i)] = acc;
  }
  if (!(acc > 0)) throw ConstructionError("sampling law has zero mass");
  return c;
}

/// Runs `per_path(engine, acc)` for every path, block by block. Each block
/// owns stream make_stream(seed, block) and its own accumulator; blocks are
/// summed in index order, so the result does not depend on `workers`.
template <typename Acc, typename PerPath>
Acc run_blocks(long paths, std::uint64_t seed, int workers, PerPath per_path) {
  const long blocks = (paths + kPathsPerBlock - 1) / kPathsPerBlock;
  std::vector<Acc> partial(static_cast<size_t>(blocks));
  auto work = [&](long first, long stride) {
    for (long b = first; b < blocks; b += stride) {
      Engine eng = make_stream(seed, static_cast<std::uint64_t>(b));
      const long count = std::min(kPathsPerBlock, paths - b * kPathsPerBlock);
      for (long i = 0; i < count; ++i) per_path(eng, partial[static_cast<size_t>(b)]);
    }
  };
  workers = std::max(1, workers);
  if (workers == 1 || blocks <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

/// Position of a walk on F_k, updated in place by right multiplication.
class FreeWalker {
public:
  explicit FreeWalker(int rank) : word_(rank) {}
  void step(int letter) { word_.push(letter); }
  const FreeWord& position() const { return word_; }
  int length() const { return word_.length(); }

private:
  FreeWord word_;
};

struct PathOutcome {
  FreeWord end;
  bool conclusive;
};

PathOutcome run_free_path(const FreeLaw& law, int n, int prefix_len, int margin, Engine& eng) {
  FreeWalker walker(law.rank());
  // Minimum of |X_m| over m in [n - margin, n].
  int recent_min = n - margin <= 0 ? 0 : std::numeric_limits<int>::max();
  for (int m = 1; m <= n; ++m) {
    walker.step(law.sample(eng));
    if (m >= n - margin) recent_min = std::min(recent_min, walker.length());
  }
  const bool conclusive = walker.length() >= prefix_len + margin && recent_min >= prefix_len;
  return {walker.position(), conclusive};
}

}  // namespace

FreeLaw::FreeLaw(int rank, std::vector<double> weights) : rank_(rank), weights_(std::move(weights)) {
  if (rank < 1) throw ConstructionError("free group rank must be >= 1");
  if (weights_.size() != static_cast<size_t>(2 * rank))
    throw ConstructionError("free law needs 2k letter weights");
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0) throw ConstructionError("free law has a negative weight");
    total += w;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > kProbabilityTol) throw ConstructionError("free law weights must sum to 1");
}

FreeLaw FreeLaw::simple(int rank) {
  return FreeLaw(rank, std::vector<double>(static_cast<size_t>(2 * rank), 1.0 / (2 * rank)));
}

bool FreeLaw::is_simple() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return std::abs(w - 1.0 / (2 * rank_)) <= kProbabilityTol; });
}

int FreeLaw::sample(Engine& eng) const { return letter(sample_index(cumulative_, eng)); }

WalkPath<int> sample_path(const Measure<double>& mu, int start, int n, std::uint64_t seed) {
  CDLAB_OP("sample_path");
  if (!mu.is_probability()) throw ConstructionError("sample_path: mu must be a probability");
  if (n < 0) throw ConstructionError("sample_path: n must be >= 0");
  const auto& g = mu.group();
  const auto cumulative = cumulative_weights(mu.weights());
  Engine eng = make_stream(seed, 0);
  WalkPath<int> path{start, {}, {start}};
  for (int m = 0; m < n; ++m) {
    const int y = sample_index(cumulative, eng);
    path.increments.push_back(y);
    path.positions.push_back(g.mul(path.positions.back(), y));
  }
  return path;
}

WalkPath<long> sample_path(const Measure<double>& mu, long start, int n, std::uint64_t seed) {
  CDLAB_OP("sample_path");
  if (!mu.on_integers() || !mu.is_probability()) throw ConstructionError("sample_path: need a probability on Z");
  if (n < 0) throw ConstructionError("sample_path: n must be >= 0");
  const auto cumulative = cumulative_weights(mu.weights());
  Engine eng = make_stream(seed, 0);
  WalkPath<long> path{start, {}, {start}};
  for (int m = 0; m < n; ++m) {
    const long y = mu.lo() + sample_index(cumulative, eng);
    path.increments.push_back(y);
    path.positions.push_back(path.positions.back() + y);
  }
  return path;
}

WalkPath<FreeWord, int> sample_path(const FreeLaw& law, const FreeWord& start, int n, std::uint64_t seed) {
  CDLAB_OP("sample_path");
  if (start.rank() != law.rank()) throw ConstructionError("sample_path: rank mismatch");
  if (n < 0) throw ConstructionError("sample_path: n must be >= 0");
  Engine eng = make_stream(seed, 0);
  WalkPath<FreeWord, int> path{start, {}, {start}};
  FreeWord pos = start;
  for (int m = 0; m < n; ++m) {
    const int s = law.sample(eng);
    pos.push(s);
    path.increments.push_back(s);
    path.positions.push_back(pos);
  }
  return path;
}

Cylinder::Cylinder(int rank, std::vector<int> prefix) : word_(rank, std::move(prefix)) {
  if (word_.empty()) throw ConstructionError("cylinder prefix must be nonempty");
}

Cylinder Cylinder::parse(int rank, const std::string& text) {
  return Cylinder(rank, FreeWord::parse(rank, text).letters());
}

bool Cylinder::contains_prefix_of(const FreeWord& g) const {
  return common_prefix_length(word_, g) == word_.length();
}

double harmonic_measure_cylinder(const Cylinder& w) {
  CDLAB_OP("harmonic_measure_cylinder");
  const double k2 = 2.0 * w.rank();
  return (1.0 / k2) * std::pow(1.0 / (k2 - 1.0), w.length() - 1);
}

double poisson_extension(const Cylinder& w, const FreeWord& g) {
  CDLAB_OP("poisson_extension");
  if (g.rank() != w.rank()) throw ConstructionError("poisson_extension: rank mismatch");
  const double k2 = 2.0 * w.rank(), q = k2 - 1.0;
  const int d = free_distance(g, w.word());
  const double decay = std::pow(q, -d);
  if (w.contains_prefix_of(g)) return 1.0 - decay / k2;
  return (q / k2) * decay;
}

namespace {

struct CountAcc {
  std::vector<long> hits;
  long conclusive = 0;
  long inconclusive = 0;
  CountAcc& operator+=(const CountAcc& o) {
    if (hits.size() < o.hits.size()) hits.resize(o.hits.size(), 0);
    for (size_t i = 0; i < o.hits.size(); ++i) hits[i] += o.hits[i];
    conclusive += o.conclusive;
    inconclusive += o.inconclusive;
    return *this;
  }
};

struct MomentAcc {
  double sum = 0.0, sum_sq = 0.0;
  long count = 0;
  MomentAcc& operator+=(const MomentAcc& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    count += o.count;
    return *this;
  }
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / double(count) : 0.0; }
  double stderr_of_mean() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - double(count) * m * m) / double(count - 1));
    return std::sqrt(var / double(count));
  }
};

}  // namespace

std::vector<CylinderEstimate> cylinder_frequencies(const std::vector<Cylinder>& cylinders, const FreeLaw& law,
                                                   const MonteCarloOptions& options) {
  if (cylinders.empty()) return {};
  int longest = 0;
  for (const auto& c : cylinders) {
    if (c.rank() != law.rank()) throw ConstructionError("cylinder_frequencies: rank mismatch");
    longest = std::max(longest, c.length());
  }
  const auto acc = run_blocks<CountAcc>(options.paths, options.seed, options.workers, [&](Engine& eng, CountAcc& a) {
    if (a.hits.empty()) a.hits.assign(cylinders.size(), 0);
    const auto out = run_free_path(law, options.n, longest, options.margin, eng);
    if (!out.conclusive) {
      ++a.inconclusive;
      return;
    }
    ++a.conclusive;
    for (size_t i = 0; i < cylinders.size(); ++i)
      if (cylinders[i].contains_prefix_of(out.end)) ++a.hits[i];
  });
  std::vector<CylinderEstimate> result;
  for (size_t i = 0; i < cylinders.size(); ++i) {
    CylinderEstimate e;
    e.n_paths = options.paths;
    e.inconclusive = acc.inconclusive;
    e.seed = options.seed;
    const double hits = i < acc.hits.size() ? double(acc.hits[i]) : 0.0;
    if (acc.conclusive > 0) {
      e.estimate = hits / double(acc.conclusive);
      e.stderr_ = std::sqrt(e.estimate * (1.0 - e.estimate) / double(acc.conclusive));
    }
    e.exact = law.is_simple() ? harmonic_measure_cylinder(cylinders[i]) : std::nan("");
    result.push_back(e);
  }
  return result;
}

MartingaleReport martingale_convergence_check(const Cylinder& w, const MonteCarloOptions& options, double threshold) {
  CDLAB_OP("martingale_convergence_check");
  const auto law = FreeLaw::simple(w.rank());
  struct Acc {
    long conclusive = 0, inconclusive = 0, agreement = 0;
    Acc& operator+=(const Acc& o) {
      conclusive += o.conclusive;
      inconclusive += o.inconclusive;
      agreement += o.agreement;
      return *this;
    }
  };
  const auto acc = run_blocks<Acc>(options.paths, options.seed, options.workers, [&](Engine& eng, Acc& a) {
    const auto out = run_free_path(law, options.n, w.length(), options.margin, eng);
    if (!out.conclusive) {
      ++a.inconclusive;
      return;
    }
    ++a.conclusive;
    const double indicator = w.contains_prefix_of(out.end) ? 1.0 : 0.0;
    if (std::abs(poisson_extension(w, out.end) - indicator) < threshold) ++a.agreement;
  });
  MartingaleReport r;
  r.n_paths = options.paths;
  r.conclusive = acc.conclusive;
  r.inconclusive = acc.inconclusive;
  r.agreement = acc.agreement;
  r.threshold = threshold;
  r.seed = options.seed;
  if (options.paths > 0) {
    r.conclusive_fraction = double(acc.conclusive) / double(options.paths);
    r.agreement_fraction = double(acc.agreement) / double(options.paths);
  }
  return r;
}

DiamondReport diamond_vs_pointwise_mc(const Cylinder& w, const MonteCarloOptions& options) {
  CDLAB_OP("diamond_vs_pointwise_mc");
  const auto law = FreeLaw::simple(w.rank());
  const auto acc = run_blocks<MomentAcc>(options.paths, options.seed, options.workers, [&](Engine& eng, MomentAcc& a) {
    FreeWalker walker(w.rank());
    for (int m = 0; m < options.n; ++m) walker.step(law.sample(eng));
    const double h = poisson_extension(w, walker.position());
    a.add(h * h);
  });
  DiamondReport r;
  r.estimate = acc.mean();
  r.stderr_ = acc.stderr_of_mean();
  r.diamond_value = harmonic_measure_cylinder(w);
  const double he = poisson_extension(w, FreeWord(w.rank()));
  r.pointwise_value = he * he;
  r.n_paths = options.paths;
  r.seed = options.seed;
  return r;
}

MartingaleStepReport martingale_step_regression(const Cylinder& w, const MonteCarloOptions& options) {
  const auto law = FreeLaw::simple(w.rank());
  struct Acc {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    long n = 0;
    Acc& operator+=(const Acc& o) {
      sx += o.sx, sy += o.sy, sxx += o.sxx, sxy += o.sxy, syy += o.syy, n += o.n;
      return *this;
    }
  };
  const auto acc = run_blocks<Acc>(options.paths, options.seed, options.workers, [&](Engine& eng, Acc& a) {
    FreeWalker walker(w.rank());
    double h = poisson_extension(w, walker.position());
    for (int m = 0; m < options.n; ++m) {
      walker.step(law.sample(eng));
      const double next = poisson_extension(w, walker.position());
      const double d = next - h;
      a.sx += h, a.sy += d, a.sxx += h * h, a.sxy += h * d, a.syy += d * d, ++a.n;
      h = next;
    }
  });
  MartingaleStepReport r;
  r.transitions = acc.n;
  if (acc.n < 3) return r;
  const double n = double(acc.n);
  r.mean_increment = acc.sy / n;
  const double var_y = std::max(0.0, (acc.syy - n * r.mean_increment * r.mean_increment) / (n - 1));
  r.stderr_ = std::sqrt(var_y / n);
  const double mx = acc.sx / n;
  const double sxx = acc.sxx - n * mx * mx;
  if (sxx > 0) {
    r.slope = (acc.sxy - n * mx * r.mean_increment) / sxx;
    const double intercept = r.mean_increment - r.slope * mx;
    const double rss = acc.syy - 2 * intercept * acc.sy - 2 * r.slope * acc.sxy + n * intercept * intercept +
                       2 * intercept * r.slope * acc.sx + r.slope * r.slope * acc.sxx;
    r.slope_stderr = std::sqrt(std::max(0.0, rss / (n - 2)) / sxx);
  }
  return r;
}

double mean_word_length(const FreeLaw& law, const MonteCarloOptions& options) {
  const auto acc = run_blocks<MomentAcc>(options.paths, options.seed, options.workers, [&](Engine& eng, MomentAcc& a) {
    FreeWalker walker(law.rank());
    for (int m = 0; m < options.n; ++m) walker.step(law.sample(eng));
    a.add(walker.length());
  });
  return acc.mean();
}

StationaryMeasure stationary_measure(const GSpaceAction& action, const Measure<double>& mu, double tol,
                                     int max_iterations) {
  CDLAB_OP("stationary_measure");
  if (!mu.is_probability()) throw ConstructionError("stationary_measure: mu must be a probability");
  const MatrixXr pt = gspace_markov_matrix(action, mu).transpose();
  const int m = action.points();
  StationaryMeasure out;

  const auto fixed = harmonic_space(pt);
  out.fixed_space_dim = fixed.rank();
  if (fixed.rank() == 1) {
    VectorXr v = fixed.basis().col(0);
    v /= v.sum();
    out.eigen_solution = v;
    out.eigen_residual = (pt * v - v).cwiseAbs().sum();
  }

  const MatrixXr lazy = 0.5 * (MatrixXr::Identity(m, m) + pt);
  VectorXr s = VectorXr::Constant(m, 1.0 / m);
  double step = 0.0;
  for (out.iterations = 0; out.iterations < max_iterations;) {
    VectorXr next = lazy * s;
    step = (next - s).cwiseAbs().sum();
    s = std::move(next);
    ++out.iterations;
    if (step < tol) {
      out.converged = true;
      break;
    }
  }
  out.power_solution = s;
  out.power_residual = (pt * s - s).cwiseAbs().sum();
  if (out.eigen_solution.size() > 0) {
    out.measure = out.eigen_solution;
    out.residual = out.eigen_residual;
  } else {
    out.measure = s;
    out.residual = out.power_residual;
  }
  return out;
}

namespace {

double neighbour_mean(const std::function<double(const FreeWord&)>& h, const FreeWord& g) {
  double sum = 0.0;
  for (int s = 1; s <= g.rank(); ++s)
    for (int letter : {s, -s}) {
      FreeWord n = g;
      n.push(letter);
      sum += h(n);
    }
  return sum / (2.0 * g.rank());
}

}  // namespace

double free_subharmonic_violation(const std::function<double(const FreeWord&)>& h,
                                  const std::vector<FreeWord>& samples) {
  CDLAB_OP("subharmonic_check");
  double worst = 0.0;
  for (const auto& g : samples) worst = std::max(worst, h(g) - neighbour_mean(h, g));
  return worst;
}

double free_harmonic_residual(const std::function<double(const FreeWord&)>& h, const std::vector<FreeWord>& samples) {
  double worst = 0.0;
  for (const auto& g : samples) worst = std::max(worst, std::abs(h(g) - neighbour_mean(h, g)));
  return worst;
}

}  // namespace cdlab
