#include "cdlab/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cdlab::lp {

namespace {

constexpr double kEps = 1e-11;

class Tableau {
public:
  // Row 0 is the objective (reduced costs, rhs holds -objective); rows
  // 1..m are constraints. Column `cols_` is the rhs.
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(MatrixXr::Zero(rows + 1, cols + 1)), cols_(cols) {}

  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double& rhs(Eigen::Index r) { return t_(r, cols_); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return cols_; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index r = 0; r < t_.rows(); ++r) {
      if (r == row) continue;
      const double f = t_(r, col);
      if (f != 0.0) t_.row(r) -= f * t_.row(row);
    }
  }

  // One Bland step over columns [0, allowed). Returns false at optimality.
  // Sets `unbounded` when the entering column has no positive entry.
  bool step(std::vector<Eigen::Index>& basis, Eigen::Index allowed, bool& unbounded) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < allowed; ++j)
      if (t_(0, j) < -kEps) {
        enter = j;
        break;
      }
    if (enter < 0) return false;
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 1; r <= rows(); ++r) {
      const double a = t_(r, enter);
      if (a <= kEps) continue;
      const double ratio = rhs(r) / a;
      if (ratio < best - kEps || (ratio <= best + kEps && leave >= 0 && basis[r - 1] < basis[leave - 1])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave < 0) {
      unbounded = true;
      return false;
    }
    pivot(leave, enter);
    basis[leave - 1] = enter;
    return true;
  }

private:
  MatrixXr t_;
  Eigen::Index cols_;
};

}  // namespace

Result minimize(const MatrixXr& a, const VectorXr& b, const VectorXr& c, int max_iterations) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) throw ConstructionError("lp::minimize: dimension mismatch");
  Result result;
  result.x = VectorXr::Zero(n);

  // Phase 1: artificial variables n..n+m-1 with b made nonnegative.
  Tableau tab(m, n + m);
  std::vector<Eigen::Index> basis(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < n; ++j) tab.at(i + 1, j) = sign * a(i, j);
    tab.at(i + 1, n + i) = 1.0;
    tab.rhs(i + 1) = sign * b[i];
    basis[static_cast<size_t>(i)] = n + i;
    for (Eigen::Index j = 0; j < n; ++j) tab.at(0, j) -= tab.at(i + 1, j);
    tab.rhs(0) -= tab.rhs(i + 1);
  }
  bool unbounded = false;
  while (tab.step(basis, n + m, unbounded)) {
    if (++result.iterations > max_iterations) return result;
  }
  if (-tab.rhs(0) > 1e-9 * std::max(1.0, b.cwiseAbs().sum())) {
    result.status = Status::infeasible;
    return result;
  }
  // Drive remaining artificials out of the basis where possible.
  for (Eigen::Index r = 1; r <= m; ++r) {
    if (basis[r - 1] < n) continue;
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(tab.at(r, j)) > kEps) {
        tab.pivot(r, j);
        basis[r - 1] = j;
        break;
      }
  }

  // Phase 2 objective row: c - c_B B^-1 A, artificial columns excluded.
  for (Eigen::Index j = 0; j <= n + m; ++j) tab.at(0, j) = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) tab.at(0, j) = c[j];
  for (Eigen::Index r = 1; r <= m; ++r) {
    const Eigen::Index bj = basis[r - 1];
    if (bj >= n || c[bj] == 0.0) continue;
    const double f = c[bj];
    for (Eigen::Index j = 0; j <= n + m; ++j) tab.at(0, j) -= f * tab.at(r, j);
  }
  unbounded = false;
  while (tab.step(basis, n, unbounded)) {
    if (++result.iterations > max_iterations) return result;
  }
  if (unbounded) {
    result.status = Status::unbounded;
    return result;
  }
  for (Eigen::Index r = 1; r <= m; ++r)
    if (basis[r - 1] < n) result.x[basis[r - 1]] = tab.rhs(r);
  result.objective = c.dot(result.x);
  result.status = Status::optimal;
  return result;
}

}  // namespace cdlab::lp
