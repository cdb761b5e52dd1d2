#ifndef CDLAB_IDEAL_HPP
#define CDLAB_IDEAL_HPP

#include <cstdint>
#include <vector>

#include "cdlab/markov.hpp"
#include "cdlab/measure.hpp"
#include "cdlab/rng.hpp"
#include "cdlab/subspace.hpp"

namespace cdlab {

/// Predual spaces handled here: l1(G) with the l1 norm, and trace-class
/// matrices over C^G (stored as column-major vec) with the trace norm.
enum class PredualSpace { l1, trace_class };

/// A closed subspace of a predual: J_mu or J_mu,pi, i.e. the range of
/// I - pi_*(mu~).
struct IdealBasis {
  PredualSpace ambient = PredualSpace::l1;
  /// Orthonormal basis of the subspace.
  Subspace<double> basis;
  /// A linearly independent subset of the canonical spanning vectors
  /// e_i - P e_i, selected by column-pivoted QR.
  MatrixXr generators;
};

/// J_mu = span{phi - phi * mu}: column space of I - C_mu on l1(G).
IdealBasis j_mu_basis(const Measure<double>& mu);

/// Range of I - P for a predual operator P (e.g. predual_matrix(mu) or
/// conjugation_predual_operator(mu)).
IdealBasis j_mu_pi_basis(const MatrixXr& predual_op, PredualSpace ambient);

/// Norm of a predual vector: sum |x_i| for l1, sum of singular values of
/// the unvectorized matrix for trace class.
double predual_norm(const VectorXr& x, PredualSpace ambient);

double trace_norm(const MatrixXr& m);

/// Largest ambient dimension for the trace-norm distance search.
inline constexpr Eigen::Index kMaxTraceNormAmbient = 4;

/// dist(x, J) in the predual norm. l1: exact linear program
///   min sum(u + v)  s.t.  x - B t = u - v,  u, v >= 0.
/// Trace class: grid search with successive refinement to 1e-7 over the
/// coordinates of J, for ambient dimension <= kMaxTraceNormAmbient.
double l1_distance(const VectorXr& x, const IdealBasis& j);

/// a_n = ||(1/n) sum_{i=1..n} P^i x_*|| for n = 1..N and the quotient norm
/// dist(x_*, range(I - P)).
struct DerriennicTrace {
  std::vector<double> norms;  ///< norms[n-1] = a_n
  double lp_distance = 0.0;
  double inf = 0.0;             ///< min_n a_n
  double limit_estimate = 0.0;  ///< a_N
  /// max over m + n <= min(N, 512) of (m+n) a_{m+n} - m a_m - n a_n.
  double subadditivity_violation = 0.0;
  /// max_n (lp_distance - a_n).
  double lower_bound_violation = 0.0;

  bool consistent(double slack) const {
    return subadditivity_violation <= slack && lower_bound_violation <= slack &&
           limit_estimate - inf <= slack && std::abs(limit_estimate - lp_distance) <= slack;
  }
};

DerriennicTrace derriennic_trace(const VectorXr& x, const MatrixXr& predual_op, PredualSpace ambient, int n_max);
/// l1(G) case, P = predual_matrix(mu).
DerriennicTrace derriennic_trace(const VectorXr& x, const Measure<double>& mu, int n_max);

struct ApproximateIdentity {
  /// eta_n = delta_e - (1/n) sum_{i=1..n} mu^i.
  Measure<double> eta;
  /// max over the generator basis phi = delta_g - delta_g * mu of J_mu of
  /// ||phi * eta_n - phi||_1 (at most 2/n by telescoping).
  double max_residual = 0.0;
};

ApproximateIdentity approximate_identity(const Measure<double>& mu, int n);

/// kappa(S)(g) = S(g, g): the expectation of a matrix over C^G onto l1(G).
Measure<cplx> kappa(const GroupPtr& g, const MatrixXc& s);

/// S * T = sum_g kappa(S)(g) lambda(g) T lambda(g)^-1, where
/// (lambda(g) T lambda(g)^-1)(x, y) = T(g^-1 x, g^-1 y).
MatrixXc nc_convolve(const FiniteGroup& g, const MatrixXc& s, const MatrixXc& t);

/// pi_*(sigma) T = sum_g sigma(g) rho(g) T rho(g)^-1 on trace-class matrices.
MatrixXc pi_star(const Measure<cplx>& sigma, const MatrixXc& t);

MatrixXc unvec(const VectorXc& v, Eigen::Index n);
VectorXc vec(const MatrixXc& m);

struct LeftIdealReport {
  int trials = 0;
  Eigen::Index ideal_rank = 0;
  /// max ||(I - Q Q^*) vec(S * X)|| over trials, X in J_mu,pi.
  double max_residual = 0.0;
};

/// Random S and X in J_mu,pi (trace class); checks S * X stays in J_mu,pi.
LeftIdealReport left_ideal_check(const Measure<double>& mu, int trials, std::uint64_t seed = kDefaultSeed);

}  // namespace cdlab

#endif  // CDLAB_IDEAL_HPP
