#ifndef CDLAB_SUBSPACE_HPP
#define CDLAB_SUBSPACE_HPP

#include <algorithm>

#include <Eigen/SVD>

#include "cdlab/types.hpp"

namespace cdlab {

/// Default relative singular-value cutoff for rank decisions.
inline constexpr double kRankTol = 1e-10;

/// Subspace of Scalar^ambient_dim held as an orthonormal column basis.
template <typename Scalar>
class Subspace {
public:
  Subspace(Eigen::Index ambient_dim, Matrix<Scalar> basis, double tol)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)), tol_(tol) {
    if (basis_.rows() != ambient_dim_) throw ConstructionError("subspace basis has wrong ambient dimension");
  }

  static Subspace zero(Eigen::Index dim, double tol = kRankTol) {
    return Subspace(dim, Matrix<Scalar>::Zero(dim, 0), tol);
  }
  static Subspace full(Eigen::Index dim, double tol = kRankTol) {
    return Subspace(dim, Matrix<Scalar>::Identity(dim, dim), tol);
  }

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index rank() const { return basis_.cols(); }
  const Matrix<Scalar>& basis() const { return basis_; }
  double tol() const { return tol_; }

  Matrix<Scalar> projector() const { return basis_ * basis_.adjoint(); }

  /// Component of v orthogonal to the subspace.
  template <typename Derived>
  Matrix<Scalar> orthogonal_part(const Eigen::MatrixBase<Derived>& v) const {
    return v - basis_ * (basis_.adjoint() * v);
  }

  /// Largest distance from a unit vector of `other` to this subspace.
  double containment_residual(const Subspace& other) const {
    if (other.rank() == 0) return 0.0;
    return orthogonal_part(other.basis()).colwise().norm().maxCoeff();
  }

private:
  Eigen::Index ambient_dim_;
  Matrix<Scalar> basis_;
  double tol_;
};

namespace detail {

inline Eigen::Index numerical_rank(const Vector<double>& singular, double rel_tol) {
  if (singular.size() == 0 || singular[0] == 0.0) return 0;
  const double cutoff = rel_tol * singular[0];
  Eigen::Index r = 0;
  while (r < singular.size() && singular[r] > cutoff) ++r;
  return r;
}

}  // namespace detail

/// Kernel of A via SVD, discarding singular values <= rel_tol * sigma_max.
template <typename Derived>
Subspace<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a, double rel_tol = kRankTol) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Subspace<Scalar>::full(n, rel_tol);
  Eigen::JacobiSVD<Matrix<Scalar>, Eigen::ColPivHouseholderQRPreconditioner> svd(a.eval(), Eigen::ComputeFullV);
  const Eigen::Index r = detail::numerical_rank(svd.singularValues(), rel_tol);
  return Subspace<Scalar>(n, svd.matrixV().rightCols(n - r), rel_tol);
}

/// Column space of A via SVD with the same cutoff rule.
template <typename Derived>
Subspace<typename Derived::Scalar> column_space(const Eigen::MatrixBase<Derived>& a, double rel_tol = kRankTol) {
  using Scalar = typename Derived::Scalar;
  if (a.cols() == 0) return Subspace<Scalar>::zero(a.rows(), rel_tol);
  Eigen::JacobiSVD<Matrix<Scalar>, Eigen::ColPivHouseholderQRPreconditioner> svd(a.eval(), Eigen::ComputeFullU);
  const Eigen::Index r = detail::numerical_rank(svd.singularValues(), rel_tol);
  return Subspace<Scalar>(a.rows(), svd.matrixU().leftCols(r), rel_tol);
}

/// Equal rank and mutual containment within `residual_tol`.
template <typename Scalar>
bool subspaces_equal(const Subspace<Scalar>& a, const Subspace<Scalar>& b, double residual_tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return false;
  return std::max(a.containment_residual(b), b.containment_residual(a)) < residual_tol;
}

/// max(residual of a in b, residual of b in a).
template <typename Scalar>
double mutual_residual(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  return std::max(a.containment_residual(b), b.containment_residual(a));
}

}  // namespace cdlab

#endif  // CDLAB_SUBSPACE_HPP
