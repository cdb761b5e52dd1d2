#ifndef CDLAB_SIMPLEX_HPP
#define CDLAB_SIMPLEX_HPP

#include "cdlab/types.hpp"

namespace cdlab::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
  Status status = Status::iteration_limit;
  double objective = 0.0;
  VectorXr x;
  int iterations = 0;
};

/// Dense two-phase tableau simplex for
///
///   minimize c^T x  subject to  A x = b,  x >= 0.
///
/// Bland's rule is used throughout, so degenerate problems terminate.
/// Intended for problems with at most a few hundred variables.
Result minimize(const MatrixXr& a, const VectorXr& b, const VectorXr& c, int max_iterations = 100000);

}  // namespace cdlab::lp

#endif  // CDLAB_SIMPLEX_HPP
