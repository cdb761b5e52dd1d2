#include "cdlab/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdlab/simplex.hpp"
#include "cdlab/coverage.hpp"

namespace cdlab {

namespace {

Eigen::Index matrix_side(Eigen::Index vec_dim) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(vec_dim))));
  if (n * n != vec_dim) throw ConstructionError("trace-class vector length is not a square");
  return n;
}

double l1_distance_lp(const VectorXr& x, const MatrixXr& b) {
  const Eigen::Index m = x.size(), r = b.cols();
  if (r == 0) return x.cwiseAbs().sum();
  // Variables [t+, t-, u, v]:  B t+ - B t- + u - v = x.
  MatrixXr a(m, 2 * r + 2 * m);
  a << b, -b, MatrixXr::Identity(m, m), -MatrixXr::Identity(m, m);
  VectorXr c = VectorXr::Zero(2 * r + 2 * m);
  c.tail(2 * m).setOnes();
  const auto res = lp::minimize(a, x, c);
  if (res.status != lp::Status::optimal) throw std::runtime_error("l1_distance: linear program did not solve");
  return std::max(0.0, res.objective);
}

double trace_norm_distance(const VectorXr& x, const MatrixXr& b) {
  const Eigen::Index n = matrix_side(x.size());
  auto objective = [&](const VectorXr& t) {
    VectorXr r = x - b * t;
    return trace_norm(Eigen::Map<const MatrixXr>(r.data(), n, n));
  };
  const Eigen::Index r = b.cols();
  if (r == 0) return objective(VectorXr::Zero(0));

  // Successively refined grid: 5 points per coordinate around the current
  // best point, halving the spacing each round.
  VectorXr best = b.transpose() * x;  // least-squares start (orthonormal basis)
  double best_value = objective(best);
  double h = std::max(1.0, x.norm()) / 2.0;
  const int points = 5;
  Eigen::Index total = 1;
  for (Eigen::Index i = 0; i < r; ++i) total *= points;
  while (h > 1e-7) {
    VectorXr center = best;
    bool moved = false;
    for (Eigen::Index code = 0; code < total; ++code) {
      VectorXr t = center;
      Eigen::Index c = code;
      for (Eigen::Index i = 0; i < r; ++i) {
        t[i] += h * double(c % points - points / 2);
        c /= points;
      }
      const double v = objective(t);
      if (v < best_value - 1e-15) {
        best_value = v;
        best = t;
        moved = true;
      }
    }
    // Stay at this spacing while the best point lies on the grid boundary.
    const bool interior = ((best - center).cwiseAbs().array() < h * (points / 2) - 1e-15).all();
    if (!moved || interior) h /= 2.0;
  }
  return best_value;
}

}  // namespace

IdealBasis j_mu_basis(const Measure<double>& mu) {
  CDLAB_OP("j_mu_basis");
  if (!mu.is_probability()) throw ConstructionError("j_mu_basis: mu must be a probability");
  return j_mu_pi_basis(predual_matrix(mu), PredualSpace::l1);
}

IdealBasis j_mu_pi_basis(const MatrixXr& predual_op, PredualSpace ambient) {
  CDLAB_OP("j_mu_pi_basis");
  if (predual_op.rows() != predual_op.cols()) throw ConstructionError("predual operator must be square");
  if (ambient == PredualSpace::trace_class) matrix_side(predual_op.rows());
  const MatrixXr gap = MatrixXr::Identity(predual_op.rows(), predual_op.cols()) - predual_op;
  auto basis = column_space(gap);
  Eigen::ColPivHouseholderQR<MatrixXr> qr(gap);
  MatrixXr generators(gap.rows(), basis.rank());
  for (Eigen::Index k = 0; k < basis.rank(); ++k) generators.col(k) = gap.col(qr.colsPermutation().indices()[k]);
  return IdealBasis{ambient, std::move(basis), std::move(generators)};
}

double trace_norm(const MatrixXr& m) {
  return Eigen::JacobiSVD<MatrixXr>(m).singularValues().sum();
}

double predual_norm(const VectorXr& x, PredualSpace ambient) {
  if (ambient == PredualSpace::l1) return x.cwiseAbs().sum();
  const Eigen::Index n = matrix_side(x.size());
  return trace_norm(Eigen::Map<const MatrixXr>(x.data(), n, n));
}

double l1_distance(const VectorXr& x, const IdealBasis& j) {
  CDLAB_OP("l1_distance");
  if (x.size() != j.basis.ambient_dim()) throw ConstructionError("l1_distance: ambient dimension mismatch");
  if (j.ambient == PredualSpace::l1) return l1_distance_lp(x, j.basis.basis());
  if (x.size() > kMaxTraceNormAmbient)
    throw CapacityError("trace-norm distance limited to ambient dimension " +
                        std::to_string(kMaxTraceNormAmbient) + ", got " + std::to_string(x.size()));
  return trace_norm_distance(x, j.basis.basis());
}

DerriennicTrace derriennic_trace(const VectorXr& x, const MatrixXr& predual_op, PredualSpace ambient, int n_max) {
  CDLAB_OP("derriennic_trace");
  if (n_max < 1) throw ConstructionError("derriennic_trace: N must be >= 1");
  if (predual_op.rows() != x.size()) throw ConstructionError("derriennic_trace: dimension mismatch");
  DerriennicTrace out;
  out.norms.reserve(static_cast<size_t>(n_max));
  VectorXr term = x, sum = VectorXr::Zero(x.size());
  for (int n = 1; n <= n_max; ++n) {
    term = predual_op * term;
    sum += term;
    out.norms.push_back(predual_norm(sum / double(n), ambient));
  }
  out.lp_distance = l1_distance(x, j_mu_pi_basis(predual_op, ambient));
  out.inf = *std::min_element(out.norms.begin(), out.norms.end());
  out.limit_estimate = out.norms.back();

  const int cap = std::min(n_max, 512);
  double worst = -std::numeric_limits<double>::infinity();
  auto s = [&](int k) { return k * out.norms[static_cast<size_t>(k - 1)]; };
  for (int m = 1; m < cap; ++m)
    for (int n = 1; m + n <= cap; ++n) worst = std::max(worst, s(m + n) - s(m) - s(n));
  out.subadditivity_violation = std::max(0.0, worst);
  double lower = 0.0;
  for (double a : out.norms) lower = std::max(lower, out.lp_distance - a);
  out.lower_bound_violation = lower;
  return out;
}

DerriennicTrace derriennic_trace(const VectorXr& x, const Measure<double>& mu, int n_max) {
  return derriennic_trace(x, predual_matrix(mu), PredualSpace::l1, n_max);
}

ApproximateIdentity approximate_identity(const Measure<double>& mu, int n) {
  CDLAB_OP("approximate_identity");
  const auto average = cesaro_average(mu, n);
  const auto& g = mu.group();
  VectorXr w = -average.weights();
  w[g.identity()] += 1.0;
  ApproximateIdentity out{Measure<double>(mu.group_ptr(), std::move(w)), 0.0};
  const auto j = j_mu_basis(mu);
  const auto& b = j.generators;
  for (Eigen::Index k = 0; k < b.cols(); ++k) {
    const VectorXr phi = b.col(k);
    out.max_residual = std::max(out.max_residual, (predual_action(phi, out.eta) - phi).cwiseAbs().sum());
  }
  return out;
}

Measure<cplx> kappa(const GroupPtr& g, const MatrixXc& s) {
  CDLAB_OP("kappa");
  if (s.rows() != g->order() || s.cols() != g->order()) throw ConstructionError("kappa: matrix must be |G| x |G|");
  return Measure<cplx>(g, s.diagonal());
}

MatrixXc nc_convolve(const FiniteGroup& g, const MatrixXc& s, const MatrixXc& t) {
  CDLAB_OP("nc_convolve");
  const int n = g.order();
  if (s.rows() != n || s.cols() != n || t.rows() != n || t.cols() != n)
    throw ConstructionError("nc_convolve: matrices must be |G| x |G|");
  MatrixXc out = MatrixXc::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    const cplx w = s(a, a);
    if (w == cplx{0}) continue;
    const int ai = g.inv(a);
    for (int y = 0; y < n; ++y) {
      const int sy = g.mul(ai, y);
      for (int x = 0; x < n; ++x) out(x, y) += w * t(g.mul(ai, x), sy);
    }
  }
  return out;
}

MatrixXc pi_star(const Measure<cplx>& sigma, const MatrixXc& t) { return conjugate(t, sigma); }

MatrixXc unvec(const VectorXc& v, Eigen::Index n) { return Eigen::Map<const MatrixXc>(v.data(), n, n); }

VectorXc vec(const MatrixXc& m) { return Eigen::Map<const VectorXc>(m.data(), m.size()); }

LeftIdealReport left_ideal_check(const Measure<double>& mu, int trials, std::uint64_t seed) {
  CDLAB_OP("left_ideal_check");
  if (trials < 1) throw ConstructionError("left_ideal_check: trials must be >= 1");
  const auto& g = mu.group();
  const int n = g.order();
  detail::check_conjugation_capacity(n);
  const auto j = j_mu_pi_basis(conjugation_predual_operator(mu), PredualSpace::trace_class);
  const MatrixXc q = j.basis.basis().cast<cplx>();
  LeftIdealReport out;
  out.trials = trials;
  out.ideal_rank = q.cols();
  Engine eng = make_stream(seed, 0);
  for (int k = 0; k < trials; ++k) {
    const MatrixXc s = random_complex_matrix(n, n, eng);
    const VectorXc coeff = random_complex_matrix(q.cols(), 1, eng);
    const MatrixXc x = unvec(q * coeff, n);
    const VectorXc sx = vec(nc_convolve(g, s, x));
    const double r = (sx - q * (q.adjoint() * sx)).norm();
    out.max_residual = std::max(out.max_residual, r);
  }
  return out;
}

}  // namespace cdlab
