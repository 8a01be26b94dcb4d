#pragma once

#include "assembly.hpp"

#include <Eigen/SparseLU>

#include <memory>

namespace cswp {

/// Direct sparse factorization of the saddle-point tangent. Row pivoting
/// copes with the zero multiplier block. One factorization serves any number
/// of right-hand sides.
class LinearSolver {
 public:
  explicit LinearSolver(SparseMatrix matrix);

  /// Throws FactorizationError when the solve leaves a relative residual
  /// above 1e-10 (numerically rank-deficient system).
  VecX solve(const VecX& rhs) const;

  const SparseMatrix& matrix() const { return matrix_; }

 private:
  SparseMatrix matrix_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

VecX linear_solve(const SparseMatrix& matrix, const VecX& rhs);

}  // namespace cswp
