#include "cdlab/harmonic.hpp"
#include "cdlab/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdlab {

std::vector<int> generating_set(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<int> gens;
  std::vector<bool> reached(static_cast<size_t>(g.order()), false);
  reached[static_cast<size_t>(g.identity())] = true;
  for (int x : h.members()) {
    if (reached[static_cast<size_t>(x)]) continue;
    gens.push_back(x);
    const auto sub = generated_subgroup(h.parent_ptr(), gens);
    for (int y : sub.members()) reached[static_cast<size_t>(y)] = true;
  }
  return gens;
}

Subspace<double> trivial_solution_space(const Subgroup& h, TrivialMode mode) {
  CDLAB_OP("trivial_solution_space");
  const auto& g = h.parent();
  const int n = g.order();
  if (mode == TrivialMode::functions) {
    const auto cosets = left_cosets(h);
    MatrixXr basis = MatrixXr::Zero(n, static_cast<Eigen::Index>(cosets.blocks.size()));
    for (size_t b = 0; b < cosets.blocks.size(); ++b)
      for (int x : cosets.blocks[b]) basis(x, static_cast<Eigen::Index>(b)) = 1.0 / std::sqrt(double(h.order()));
    return Subspace<double>(n, std::move(basis), kRankTol);
  }
  detail::check_conjugation_capacity(n);
  const auto gens = generating_set(h);
  if (gens.empty()) return Subspace<double>::full(static_cast<Eigen::Index>(n) * n);
  return commutant(right_regular_family<double>(g, gens), n);
}

double ProjectionReport::max_commutation_residual() const {
  double r = 0.0;
  for (const auto& [name, v] : commutation_residuals) r = std::max(r, v);
  return r;
}

ProjectionReport cesaro_projection(const MatrixXr& m, const CesaroOptions& options,
                                   const std::vector<std::pair<std::string, MatrixXr>>& commuting) {
  CDLAB_OP("cesaro_projection");
  if (m.rows() != m.cols()) throw ConstructionError("cesaro_projection: operator must be square");
  if (!is_stochastic(m)) throw ConstructionError("cesaro_projection: operator is not stochastic");
  if (options.n_max < 1) throw ConstructionError("cesaro_projection: n_max must be >= 1");
  ProjectionReport report;

  MatrixXr power = m;
  MatrixXr average = m;
  int n = 1;
  double step = 0.0;
  while (n < options.n_max) {
    ++n;
    power = power * m;
    MatrixXr delta = (power - average) / double(n);
    average += delta;
    step = delta.norm();
    if (step < options.tol) break;
  }
  report.cesaro_terms = n;
  report.cesaro_step = step;
  report.cesaro_converged = n > 1 && step < options.tol;

  // A_n has eigenvalue 1 exactly on the fixed space of M and eigenvalues
  // (1/n) sum_i lambda^i of modulus < 1 elsewhere, so its powers converge to
  // the same projection as the averages themselves.
  MatrixXr k = average;
  if (options.refine) {
    // Stop at the roundoff floor: once the change stops shrinking, further
    // squarings only amplify rounding in the unit eigenvalue.
    double previous = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 64; ++s) {
      MatrixXr sq = k * k;
      const double change = (sq - k).norm();
      if (change >= previous && change < 1e-8) break;
      k = std::move(sq);
      ++report.refinement_squarings;
      if (change < 1e-15 * std::max(1.0, k.norm())) break;
      previous = change;
    }
  }

  report.idempotency_residual = (k * k - k).norm();
  report.norm_inf = k.cwiseAbs().rowwise().sum().maxCoeff();
  report.min_entry = k.minCoeff();
  report.row_sum_residual = (k.rowwise().sum().array() - 1.0).abs().maxCoeff();
  for (const auto& [name, t] : commuting)
    report.commutation_residuals.emplace_back(name, (k * t - t * k).norm());
  report.converged = report.idempotency_residual < std::max(options.tol, 1e-9);
  report.K = std::move(k);
  return report;
}

DiamondResult diamond_product(const VectorXr& h1, const VectorXr& h2, const Measure<double>& mu) {
  CDLAB_OP("diamond_product");
  const MatrixXr m = right_markov_matrix(mu);
  for (const auto* h : {&h1, &h2}) {
    if (h->size() != m.rows()) throw ConstructionError("diamond_product: dimension mismatch");
    const double r = (m * *h - *h).cwiseAbs().maxCoeff();
    if (r > 1e-9)
      throw ConstructionError("diamond_product: input is not harmonic (residual " + std::to_string(r) + ")");
  }
  const auto k = cesaro_projection(m).K;
  const VectorXr pointwise = h1.cwiseProduct(h2);
  DiamondResult out{k * pointwise, 0.0};
  out.pointwise_residual = (out.value - pointwise).cwiseAbs().maxCoeff();
  return out;
}

ChoquetDenyVerdict choquet_deny_verdict(const Measure<double>& mu, double residual_tol) {
  CDLAB_OP("choquet_deny_verdict");
  if (!mu.is_probability()) throw ConstructionError("choquet_deny_verdict: mu must be a probability");
  ChoquetDenyVerdict v;
  const MatrixXr m = right_markov_matrix(mu);
  const auto harmonic = harmonic_space(m);
  const auto h = support_subgroup(mu);
  const auto trivial = trivial_solution_space(h, TrivialMode::functions);
  v.harmonic_rank = harmonic.rank();
  v.trivial_rank = trivial.rank();
  v.coset_count = static_cast<int>(left_cosets(h).blocks.size());
  v.subspace_residual = mutual_residual(harmonic, trivial);
  v.harmonic_is_trivial = harmonic.rank() == trivial.rank() && v.subspace_residual < residual_tol;

  const auto k = cesaro_projection(m).K;
  const auto& b = harmonic.basis();
  for (Eigen::Index i = 0; i < b.cols(); ++i)
    for (Eigen::Index j = i; j < b.cols(); ++j) {
      const VectorXr p = b.col(i).cwiseProduct(b.col(j));
      v.diamond_residual = std::max(v.diamond_residual, (k * p - p).cwiseAbs().maxCoeff());
    }
  v.diamond_is_pointwise = v.diamond_residual < residual_tol;
  return v;
}

MatrixXr truncated_predual_operator(const Measure<double>& mu, long half_width) {
  if (!mu.on_integers()) throw ConstructionError("truncated operator needs a measure on Z");
  if (half_width < 0) throw ConstructionError("window half-width must be >= 0");
  const long dim = 2 * half_width + 1;
  MatrixXr t = MatrixXr::Zero(dim, dim);
  // (x * mu)(j) = sum_i x(i) mu(j - i); mass leaving the window is dropped.
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) t(j, i) = mu.at(j - i);
  return t;
}

L1TrivialityReport l1_harmonic_triviality(const Measure<double>& mu, long half_width) {
  CDLAB_OP("l1_harmonic_triviality");
  if (!mu.is_probability()) throw ConstructionError("l1_harmonic_triviality: mu must be a probability");
  L1TrivialityReport r;
  r.half_width = half_width;
  const auto s = mu.support();
  r.excluded = s.size() == 1 && mu.lo() + s.front() == 0;
  const MatrixXr t = truncated_predual_operator(mu, half_width);
  r.dim = t.rows();
  r.kernel_rank = harmonic_space(t).rank();
  return r;
}

double subharmonic_violation(const VectorXr& h, const MatrixXr& m) {
  CDLAB_OP("subharmonic_check");
  return std::max(0.0, (h - m * h).maxCoeff());
}

}  // namespace cdlab
