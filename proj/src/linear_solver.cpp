#include "linear_solver.hpp"

#include "errors.hpp"

#include <sstream>

namespace cswp {

LinearSolver::LinearSolver(SparseMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw FactorizationError("tangent matrix is not square");
  lu_.analyzePattern(matrix_);
  lu_.factorize(matrix_);
  if (lu_.info() != Eigen::Success) throw FactorizationError("factorization failed: " + lu_.lastErrorMessage());
}

VecX LinearSolver::solve(const VecX& rhs) const {
  if (rhs.size() != matrix_.rows()) throw FactorizationError("right-hand side has wrong dimension");
  const double scale = rhs.norm();
  if (scale == 0.0) return VecX::Zero(rhs.size());
  VecX x = lu_.solve(rhs);
  double rel = (matrix_ * x - rhs).norm() / scale;
  if (rel > 1e-13) {
    // one step of iterative refinement
    x += lu_.solve(VecX(rhs - matrix_ * x));
    rel = (matrix_ * x - rhs).norm() / scale;
  }
  if (!(rel <= 1e-10)) {
    std::ostringstream os;
    os << "numerically rank-deficient system: relative residual " << rel << " after solve";
    throw FactorizationError(os.str());
  }
  return x;
}

VecX linear_solve(const SparseMatrix& matrix, const VecX& rhs) { return LinearSolver(matrix).solve(rhs); }

}  // namespace cswp
