#ifndef CDLAB_MEASURE_HPP
#define CDLAB_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "cdlab/group.hpp"
#include "cdlab/coverage.hpp"
#include "cdlab/types.hpp"

namespace cdlab {

/// Finite window of the integers: the carrier of a measure on Z whose
/// weights are indexed lo, lo+1, ...
struct IntegerWindow {
  long lo = 0;
};

namespace detail {

template <typename Scalar>
bool is_probability_vector(const Vector<Scalar>& w) {
  Scalar total{0};
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, cplx>) {
      if (std::abs(w[i].imag()) > kProbabilityTol) return false;
      if (w[i].real() < -kProbabilityTol) return false;
    } else {
      if (w[i] < -kProbabilityTol) return false;
    }
    total += w[i];
  }
  return std::abs(total - Scalar{1}) <= kProbabilityTol;
}

}  // namespace detail

/// Finitely supported complex (or real) measure on a finite group or on Z.
///
/// The probability flag is only ever set by explicit validation or by
/// operations that provably preserve it; normalization is never implicit.
template <typename Scalar>
class Measure {
public:
  using Weights = Vector<Scalar>;

  Measure(GroupPtr group, Weights weights) : carrier_(std::move(group)), weights_(std::move(weights)) {
    const auto& g = *std::get<GroupPtr>(carrier_);
    if (weights_.size() != g.order())
      throw ConstructionError("measure has " + std::to_string(weights_.size()) +
                              " weights for a group of order " + std::to_string(g.order()));
  }

  Measure(IntegerWindow window, Weights weights) : carrier_(window), weights_(std::move(weights)) {
    if (weights_.size() == 0) throw ConstructionError("measure on Z needs a nonempty window");
  }

  static Measure point_mass(GroupPtr group, int x) {
    Weights w = Weights::Zero(group->order());
    w[x] = Scalar{1};
    Measure m(std::move(group), std::move(w));
    m.probability_ = true;
    return m;
  }

  static Measure point_mass(long k) {
    Measure m(IntegerWindow{k}, Weights::Ones(1));
    m.probability_ = true;
    return m;
  }

  /// Measure from (element, weight) atoms; repeated elements accumulate.
  static Measure from_atoms(GroupPtr group, const std::vector<std::pair<int, Scalar>>& atoms) {
    Weights w = Weights::Zero(group->order());
    for (const auto& [x, a] : atoms) {
      if (x < 0 || x >= group->order()) throw ConstructionError("atom index out of range");
      w[x] += a;
    }
    return Measure(std::move(group), std::move(w));
  }

  /// Atoms on Z; the window is the tight hull of the atoms.
  static Measure from_atoms(const std::vector<std::pair<long, Scalar>>& atoms) {
    if (atoms.empty()) throw ConstructionError("measure on Z needs at least one atom");
    long lo = atoms.front().first, hi = lo;
    for (const auto& [k, a] : atoms) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    Weights w = Weights::Zero(hi - lo + 1);
    for (const auto& [k, a] : atoms) w[k - lo] += a;
    return Measure(IntegerWindow{lo}, std::move(w));
  }

  /// Returns a copy flagged as a probability measure; throws if the weights
  /// are not nonnegative reals summing to 1 within kProbabilityTol.
  Measure as_probability() const {
    if (!detail::is_probability_vector(weights_))
      throw ConstructionError("weights are not a probability vector");
    Measure m = *this;
    m.probability_ = true;
    return m;
  }

  bool on_group() const { return std::holds_alternative<GroupPtr>(carrier_); }
  bool on_integers() const { return !on_group(); }
  const GroupPtr& group_ptr() const { return std::get<GroupPtr>(carrier_); }
  const FiniteGroup& group() const { return *group_ptr(); }
  long lo() const { return std::get<IntegerWindow>(carrier_).lo; }
  long hi() const { return lo() + static_cast<long>(weights_.size()) - 1; }

  const Weights& weights() const { return weights_; }
  Eigen::Index size() const { return weights_.size(); }
  Scalar operator[](Eigen::Index i) const { return weights_[i]; }
  /// Weight at integer k (zero outside the window).
  Scalar at(long k) const {
    if (k < lo() || k > hi()) return Scalar{0};
    return weights_[k - lo()];
  }
  bool is_probability() const { return probability_; }

  std::vector<int> support(double tol = 0.0) const {
    std::vector<int> s;
    for (Eigen::Index i = 0; i < weights_.size(); ++i)
      if (std::abs(weights_[i]) > tol) s.push_back(static_cast<int>(i));
    return s;
  }

  bool same_carrier(const Measure& other) const {
    if (on_group() != other.on_group()) return false;
    if (on_integers()) return true;
    return group_ptr() == other.group_ptr() || group() == other.group();
  }

  template <typename Other>
  Measure<Other> cast() const {
    Vector<Other> w = weights_.template cast<Other>();
    auto m = on_group() ? Measure<Other>(group_ptr(), std::move(w))
                        : Measure<Other>(IntegerWindow{lo()}, std::move(w));
    return probability_ ? m.as_probability() : m;
  }

private:
  template <typename>
  friend class Measure;
  template <typename S>
  friend Measure<S> with_probability_flag(Measure<S> m, bool flag);

  std::variant<GroupPtr, IntegerWindow> carrier_;
  Weights weights_;
  bool probability_ = false;
};

template <typename Scalar>
Measure<Scalar> with_probability_flag(Measure<Scalar> m, bool flag) {
  m.probability_ = flag;
  return m;
}

namespace detail {

inline void require_same_carrier(bool same) {
  if (!same) throw ConstructionError("measures live on different carriers");
}

/// Sum a*mu + b*nu; on Z the result window is the union of both windows.
template <typename Scalar>
Measure<Scalar> combine(const Measure<Scalar>& mu, Scalar a, const Measure<Scalar>& nu, Scalar b) {
  require_same_carrier(mu.same_carrier(nu));
  if (mu.on_group()) return Measure<Scalar>(mu.group_ptr(), a * mu.weights() + b * nu.weights());
  const long lo = std::min(mu.lo(), nu.lo()), hi = std::max(mu.hi(), nu.hi());
  Vector<Scalar> w = Vector<Scalar>::Zero(hi - lo + 1);
  w.segment(mu.lo() - lo, mu.size()) += a * mu.weights();
  w.segment(nu.lo() - lo, nu.size()) += b * nu.weights();
  return Measure<Scalar>(IntegerWindow{lo}, std::move(w));
}

}  // namespace detail

/// (mu * nu)(g) = sum_h mu(h) nu(h^-1 g). Total mass multiplies; on Z the
/// window becomes [lo1 + lo2, hi1 + hi2].
template <typename Scalar>
Measure<Scalar> convolve(const Measure<Scalar>& mu, const Measure<Scalar>& nu) {
  CDLAB_OP("convolve");
  detail::require_same_carrier(mu.same_carrier(nu));
  const bool prob = mu.is_probability() && nu.is_probability();
  if (mu.on_group()) {
    const auto& g = mu.group();
    Vector<Scalar> w = Vector<Scalar>::Zero(g.order());
    for (int a = 0; a < g.order(); ++a) {
      if (mu[a] == Scalar{0}) continue;
      for (int b = 0; b < g.order(); ++b) w[g.mul(a, b)] += mu[a] * nu[b];
    }
    return with_probability_flag(Measure<Scalar>(mu.group_ptr(), std::move(w)), prob);
  }
  Vector<Scalar> w = Vector<Scalar>::Zero(mu.size() + nu.size() - 1);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu[i] == Scalar{0}) continue;
    w.segment(i, nu.size()) += mu[i] * nu.weights();
  }
  return with_probability_flag(Measure<Scalar>(IntegerWindow{mu.lo() + nu.lo()}, std::move(w)), prob);
}

/// Reflection mu~(g) = mu(g^-1).
template <typename Scalar>
Measure<Scalar> reflect(const Measure<Scalar>& mu) {
  CDLAB_OP("reflect");
  if (mu.on_group()) {
    const auto& g = mu.group();
    Vector<Scalar> w(g.order());
    for (int x = 0; x < g.order(); ++x) w[x] = mu[g.inv(x)];
    return with_probability_flag(Measure<Scalar>(mu.group_ptr(), std::move(w)), mu.is_probability());
  }
  Vector<Scalar> w = mu.weights().reverse();
  return with_probability_flag(Measure<Scalar>(IntegerWindow{-mu.hi()}, std::move(w)),
                               mu.is_probability());
}

/// mu^n by repeated squaring, n >= 1.
template <typename Scalar>
Measure<Scalar> convolution_power(const Measure<Scalar>& mu, int n) {
  CDLAB_OP("convolution_power");
  if (n < 1) throw ConstructionError("convolution_power: n must be >= 1");
  Measure<Scalar> base = mu;
  std::optional<Measure<Scalar>> acc;
  for (int k = n;;) {
    if (k & 1) acc = acc ? convolve(*acc, base) : base;
    k >>= 1;
    if (!k) break;
    base = convolve(base, base);
  }
  return *acc;
}

/// Cesaro average A_n = (1/n) sum_{i=1..n} mu^i, n >= 1.
template <typename Scalar>
Measure<Scalar> cesaro_average(const Measure<Scalar>& mu, int n) {
  CDLAB_OP("cesaro_average");
  if (n < 1) throw ConstructionError("cesaro_average: n must be >= 1");
  Measure<Scalar> power = mu;
  Measure<Scalar> sum = mu;
  for (int i = 2; i <= n; ++i) {
    power = convolve(power, mu);
    sum = detail::combine(sum, Scalar{1}, power, Scalar{1});
  }
  auto avg = detail::combine(sum, Scalar{1} / Scalar(n), sum, Scalar{0});
  return with_probability_flag(std::move(avg), mu.is_probability());
}

/// A_n for each requested n (ascending), computed in one pass.
template <typename Scalar>
std::vector<std::pair<int, Measure<Scalar>>> cesaro_sequence(const Measure<Scalar>& mu,
                                                             std::vector<int> ns) {
  std::sort(ns.begin(), ns.end());
  std::vector<std::pair<int, Measure<Scalar>>> terms;
  if (ns.empty()) return terms;
  if (ns.front() < 1) throw ConstructionError("cesaro_sequence: n must be >= 1");
  Measure<Scalar> power = mu, sum = mu;
  size_t next = 0;
  for (int i = 1; next < ns.size(); ++i) {
    if (i > 1) {
      power = convolve(power, mu);
      sum = detail::combine(sum, Scalar{1}, power, Scalar{1});
    }
    while (next < ns.size() && ns[next] == i) {
      auto avg = detail::combine(sum, Scalar{1} / Scalar(i), sum, Scalar{0});
      terms.emplace_back(i, with_probability_flag(std::move(avg), mu.is_probability()));
      ++next;
    }
  }
  return terms;
}

template <typename Scalar>
double tv_norm(const Measure<Scalar>& mu) {
  CDLAB_OP("tv_norm");
  return mu.weights().cwiseAbs().sum();
}

template <typename Scalar>
double tv_distance(const Measure<Scalar>& mu, const Measure<Scalar>& nu) {
  CDLAB_OP("tv_distance");
  return tv_norm(detail::combine(mu, Scalar{1}, nu, Scalar{-1}));
}

/// Normalized Haar measure of a subgroup, as a measure on its parent group.
inline Measure<double> haar_on_subgroup(const Subgroup& h) {
  CDLAB_OP("haar_on_subgroup");
  VectorXr w = VectorXr::Zero(h.parent().order());
  for (int x : h.members()) w[x] = 1.0 / h.order();
  return with_probability_flag(Measure<double>(h.parent_ptr(), std::move(w)), true);
}

/// The subgroup G_mu generated by the support of a measure on a finite group.
template <typename Scalar>
Subgroup support_subgroup(const Measure<Scalar>& mu) {
  const auto s = mu.support();
  if (s.empty()) throw ConstructionError("measure has empty support");
  return generated_subgroup(mu.group_ptr(), s);
}

/// Finitely supported function on Z, values indexed from lo.
struct LatticeFunction {
  long lo = 0;
  VectorXr values;
  double at(long k) const {
    if (k < lo || k >= lo + static_cast<long>(values.size())) return 0.0;
    return values[k - lo];
  }
};

struct DecaySeries {
  /// values[n-1] = <mu^n, f>.
  std::vector<double> values;
  /// mu = delta_0: G_mu is compact and no decay is expected.
  bool degenerate = false;
};

/// Pairings <mu^n, f> for n = 1..N, computed with exact window growth.
DecaySeries weak_star_decay(const Measure<double>& mu, const LatticeFunction& f, int n_max);

}  // namespace cdlab

#endif  // CDLAB_MEASURE_HPP
