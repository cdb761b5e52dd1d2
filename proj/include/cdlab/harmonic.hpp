#ifndef CDLAB_HARMONIC_HPP
#define CDLAB_HARMONIC_HPP

#include <string>
#include <utility>
#include <vector>

#include "cdlab/group.hpp"
#include "cdlab/coverage.hpp"
#include "cdlab/markov.hpp"
#include "cdlab/measure.hpp"
#include "cdlab/subspace.hpp"

namespace cdlab {

/// Solutions of M x = x: the kernel of M - I.
template <typename Derived>
Subspace<typename Derived::Scalar> harmonic_space(const Eigen::MatrixBase<Derived>& m,
                                                  double tol = kRankTol) {
  CDLAB_OP("harmonic_space");
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw ConstructionError("harmonic_space: operator must be square");
  return kernel(Matrix<Scalar>(m - Matrix<Scalar>::Identity(m.rows(), m.cols())), tol);
}

/// Matrices X (as vec(X)) with A X = X A for every A in `mats`; all of
/// dim x dim matrices when `mats` is empty.
template <typename Scalar>
Subspace<Scalar> commutant(const std::vector<Matrix<Scalar>>& mats, Eigen::Index dim, double tol = kRankTol) {
  CDLAB_OP("commutant");
  const Eigen::Index nn = dim * dim;
  if (mats.empty()) return Subspace<Scalar>::full(nn, tol);
  Matrix<Scalar> stacked(nn * static_cast<Eigen::Index>(mats.size()), nn);
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(dim, dim);
  for (size_t k = 0; k < mats.size(); ++k) {
    const auto& a = mats[k];
    if (a.rows() != dim || a.cols() != dim) throw ConstructionError("commutant: matrices must be dim x dim");
    // vec(A X - X A) = (I (x) A - A^T (x) I) vec(X)
    auto block = stacked.middleRows(static_cast<Eigen::Index>(k) * nn, nn);
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index i = 0; i < dim; ++i)
        block.block(i * dim, j * dim, dim, dim) = (i == j ? a : Matrix<Scalar>::Zero(dim, dim)) - a(j, i) * id;
  }
  return kernel(stacked, tol);
}

/// A small generating set of a subgroup, chosen greedily from its members.
std::vector<int> generating_set(const Subgroup& h);

enum class TrivialMode { functions, operators };

/// Trivial solutions for G_mu = h. Functions: span of the left-coset
/// indicators of h. Operators: the commutant of rho(h) in matrices over C^G
/// (computed from a generating set of h, which has the same commutant).
Subspace<double> trivial_solution_space(const Subgroup& h, TrivialMode mode);

/// Norm-1 projection onto the fixed space of a stochastic matrix, obtained
/// as the limit of the Cesaro averages (1/n) sum_{i=1..n} M^i.
struct ProjectionReport {
  MatrixXr K;
  /// Averaging stopped at A_n with this n.
  int cesaro_terms = 0;
  /// ||A_n - A_{n-1}||_F at the stopping point.
  double cesaro_step = 0.0;
  bool cesaro_converged = false;
  /// Squarings of A_n used to remove the O(1/n) transient.
  int refinement_squarings = 0;
  double idempotency_residual = 0.0;  ///< ||K^2 - K||_F
  double norm_inf = 0.0;              ///< max absolute row sum
  double min_entry = 0.0;
  double row_sum_residual = 0.0;      ///< max |row sum - 1|
  std::vector<std::pair<std::string, double>> commutation_residuals;
  /// K is idempotent to within the requested tolerance.
  bool converged = false;

  double max_commutation_residual() const;
};

struct CesaroOptions {
  int n_max = 10000;
  double tol = 1e-10;
  /// Square A_n until idempotent; when false K is the raw average A_n.
  bool refine = true;
};

/// Cesaro projection of a stochastic matrix. `commuting` operators get a
/// residual ||K T - T K||_F each in the report.
ProjectionReport cesaro_projection(const MatrixXr& m, const CesaroOptions& options = {},
                                   const std::vector<std::pair<std::string, MatrixXr>>& commuting = {});

struct DiamondResult {
  VectorXr value;              ///< K(h1 h2), the limit of pi(mu^n)(h1 h2)
  double pointwise_residual;   ///< ||K(h1 h2) - h1 h2||_inf
};

/// h1 <> h2 for mu-harmonic h1, h2 on a finite group. Throws
/// ConstructionError when an input is not harmonic (residual > 1e-9).
DiamondResult diamond_product(const VectorXr& h1, const VectorXr& h2, const Measure<double>& mu);

/// Outcome of the two finite-scale Choquet-Deny tests:
/// (i)  <> equals the pointwise product on a harmonic basis;
/// (iv) harmonic space equals the space of trivial solutions.
struct ChoquetDenyVerdict {
  bool diamond_is_pointwise = false;
  bool harmonic_is_trivial = false;
  double diamond_residual = 0.0;
  double subspace_residual = 0.0;
  Eigen::Index harmonic_rank = 0;
  Eigen::Index trivial_rank = 0;
  int coset_count = 0;
  bool consistent() const { return diamond_is_pointwise == harmonic_is_trivial; }
};

ChoquetDenyVerdict choquet_deny_verdict(const Measure<double>& mu, double residual_tol = 1e-9);

struct L1TrivialityReport {
  long half_width = 0;
  Eigen::Index dim = 0;
  Eigen::Index kernel_rank = 0;
  /// mu = delta_0, so G_mu is compact and nontrivial solutions exist.
  bool excluded = false;
};

/// Truncated predual operator x -> (x * mu) restricted to [-L, L] on Z, and
/// the rank of ker(I - T_L).
L1TrivialityReport l1_harmonic_triviality(const Measure<double>& mu, long half_width);

/// Matrix of the truncated operator used by l1_harmonic_triviality.
MatrixXr truncated_predual_operator(const Measure<double>& mu, long half_width);

/// Worst violation max(0, max_g h(g) - (M h)(g)) of h <= M h.
double subharmonic_violation(const VectorXr& h, const MatrixXr& m);

}  // namespace cdlab

#endif  // CDLAB_HARMONIC_HPP
