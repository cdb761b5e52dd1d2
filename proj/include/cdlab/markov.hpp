#ifndef CDLAB_MARKOV_HPP
#define CDLAB_MARKOV_HPP

#include <vector>

#include "cdlab/group.hpp"
#include "cdlab/coverage.hpp"
#include "cdlab/measure.hpp"
#include "cdlab/types.hpp"

// Conventions, fixed for the whole library:
//
//   rho(g)    right regular representation on C^G, (rho(g) f)(x) = f(x g),
//             i.e. rho(g) e_h = e_{h g^-1}.
//   lambda(g) left regular representation, (lambda(g) f)(x) = f(g^-1 x),
//             i.e. lambda(g) e_h = e_{g h}.
//   pi(mu)    = sum_g mu(g) rho(g), so (pi(mu) h)(g) = sum_g' h(g g') mu(g').
//
// Both rho and pi are homomorphisms: pi(mu * nu) = pi(mu) pi(nu), and the
// same holds for the conjugation action A -> rho(g) A rho(g)^-1.
//
// Operators on matrices act on column-major vec(A), index x + n*y for A(x, y).

namespace cdlab {

/// Largest group order for which operators on matrices over C^G are built.
inline constexpr int kMaxConjugationOrder = 24;

template <typename Scalar = double>
Matrix<Scalar> right_regular_matrix(const FiniteGroup& g, int element) {
  const int n = g.order();
  Matrix<Scalar> r = Matrix<Scalar>::Zero(n, n);
  for (int x = 0; x < n; ++x) r(x, g.mul(x, element)) = Scalar{1};
  return r;
}

template <typename Scalar = double>
Matrix<Scalar> left_regular_matrix(const FiniteGroup& g, int element) {
  const int n = g.order();
  Matrix<Scalar> l = Matrix<Scalar>::Zero(n, n);
  const int inv = g.inv(element);
  for (int x = 0; x < n; ++x) l(x, g.mul(inv, x)) = Scalar{1};
  return l;
}

template <typename Scalar = double>
std::vector<Matrix<Scalar>> left_regular_family(const FiniteGroup& g) {
  std::vector<Matrix<Scalar>> out;
  for (int x = 0; x < g.order(); ++x) out.push_back(left_regular_matrix<Scalar>(g, x));
  return out;
}

template <typename Scalar = double>
std::vector<Matrix<Scalar>> right_regular_family(const FiniteGroup& g, std::span<const int> elements) {
  std::vector<Matrix<Scalar>> out;
  for (int x : elements) out.push_back(right_regular_matrix<Scalar>(g, x));
  return out;
}

/// Matrix of pi(mu) on functions: (M h)(g) = sum_g' h(g g') mu(g').
template <typename Scalar>
Matrix<Scalar> right_markov_matrix(const Measure<Scalar>& mu) {
  CDLAB_OP("right_markov_matrix");
  const auto& g = mu.group();
  const int n = g.order();
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    if (mu[a] == Scalar{0}) continue;
    for (int x = 0; x < n; ++x) m(x, g.mul(x, a)) += mu[a];
  }
  return m;
}

/// True when every entry is real and nonnegative and rows sum to 1.
template <typename Derived>
bool is_stochastic(const Eigen::MatrixBase<Derived>& m, double tol = kProbabilityTol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    typename Derived::Scalar sum{0};
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const auto v = m(i, j);
      if (std::abs(std::imag(v)) > tol || std::real(v) < -tol) return false;
      sum += v;
    }
    if (std::abs(sum - typename Derived::Scalar{1}) > tol) return false;
  }
  return true;
}

/// The predual action pi_*(mu~) x_* on l1(G), realized as the right
/// convolution x_* * mu. Its matrix is right_markov_matrix(mu)^T, so
/// <pi_*(mu~) x_*, h> = <x_*, pi(mu) h> with the bilinear pairing sum x h.
template <typename Scalar>
Vector<Scalar> predual_action(const Vector<Scalar>& x, const Measure<Scalar>& mu) {
  CDLAB_OP("predual_action");
  const auto& g = mu.group();
  if (x.size() != g.order()) throw ConstructionError("predual_action: dimension mismatch");
  Vector<Scalar> out = Vector<Scalar>::Zero(g.order());
  for (int a = 0; a < g.order(); ++a) {
    if (x[a] == Scalar{0}) continue;
    for (int b = 0; b < g.order(); ++b) out[g.mul(a, b)] += x[a] * mu[b];
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> predual_matrix(const Measure<Scalar>& mu) {
  return right_markov_matrix(mu).transpose();
}

namespace detail {

inline void check_conjugation_capacity(int order) {
  if (order > kMaxConjugationOrder)
    throw CapacityError("operators on matrices over a group of order " + std::to_string(order) +
                        " exceed the limit of " + std::to_string(kMaxConjugationOrder));
}

}  // namespace detail

/// A -> sum_g mu(g) rho(g) A rho(g)^-1 as an n^2 x n^2 matrix acting on
/// vec(A). Entrywise, (rho(g) A rho(g)^-1)(x, y) = A(x g, y g).
template <typename Scalar>
Matrix<Scalar> conjugation_operator(const Measure<Scalar>& mu) {
  CDLAB_OP("conjugation_operator");
  const auto& g = mu.group();
  const int n = g.order();
  detail::check_conjugation_capacity(n);
  Matrix<Scalar> c = Matrix<Scalar>::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    if (mu[a] == Scalar{0}) continue;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) c(x + n * y, g.mul(x, a) + n * g.mul(y, a)) += mu[a];
  }
  return c;
}

/// The same map applied directly to a matrix.
template <typename Scalar, typename MeasureScalar>
Matrix<Scalar> conjugate(const Matrix<Scalar>& a, const Measure<MeasureScalar>& mu) {
  const auto& g = mu.group();
  const int n = g.order();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    if (mu[s] == MeasureScalar{0}) continue;
    const Scalar w = static_cast<Scalar>(mu[s]);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) out(x, y) += w * a(g.mul(x, s), g.mul(y, s));
  }
  return out;
}

/// Predual of conjugation_operator under <S, A> = tr(S A):
/// S -> sum_g mu(g) rho(g)^-1 S rho(g), which equals conjugation_operator(mu)^T.
template <typename Scalar>
Matrix<Scalar> conjugation_predual_operator(const Measure<Scalar>& mu) {
  return conjugation_operator(reflect(mu));
}

template <typename Scalar>
Scalar trace_pairing(const Matrix<Scalar>& s, const Matrix<Scalar>& a) {
  return (s.transpose().cwiseProduct(a)).sum();
}

/// A finite G-space given by its action table: act(g, x) = g x.
class GSpaceAction {
public:
  /// table[g][x] = g x. Validates the identity and compatibility axioms.
  GSpaceAction(GroupPtr group, std::vector<std::vector<int>> table);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int points() const { return points_; }
  int act(int g, int x) const { return table_[static_cast<size_t>(g)][static_cast<size_t>(x)]; }

private:
  GroupPtr group_;
  int points_;
  std::vector<std::vector<int>> table_;
};

/// Action of G on the left cosets of H by left multiplication, points
/// numbered as in left_cosets(H).
GSpaceAction coset_action(const Subgroup& h);
/// G acting on itself by left translation.
GSpaceAction translation_action(const GroupPtr& g);
/// Every group element fixes every one of `points` points.
GSpaceAction trivial_action(const GroupPtr& g, int points);

/// P(x, y) = sum_{g : g x = y} mu(g).
Matrix<double> gspace_markov_matrix(const GSpaceAction& action, const Measure<double>& mu);

}  // namespace cdlab

#endif  // CDLAB_MARKOV_HPP
