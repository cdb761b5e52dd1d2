#ifndef CDLAB_TYPES_HPP
#define CDLAB_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cdlab {

using cplx = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXr = Matrix<double>;
using VectorXr = Vector<double>;
using MatrixXc = Matrix<cplx>;
using VectorXc = Vector<cplx>;

/// Dense square operator on a finite-dimensional space (functions on G,
/// measures on G, or vectorized matrices over G).
template <typename Scalar>
using OperatorMatrix = Matrix<Scalar>;

/// Invalid input to a constructor or operation (bad table, bad word, ...).
class ConstructionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Problem exceeds the dense-size limits of a routine.
class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Tolerance for validating probability vectors and stochastic rows.
inline constexpr double kProbabilityTol = 1e-12;

}  // namespace cdlab

#endif  // CDLAB_TYPES_HPP
