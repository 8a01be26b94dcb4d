#pragma once

#include "beam_response.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cswp {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  /// Runtime budget in seconds; 0 means none.
  double time_limit = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CriterionResult> criteria;
  /// Wall time of one PK2 assembly divided by one PK1 assembly.
  double assembly_time_ratio = 0.0;

  bool all_passed() const;
};

/// One finite-difference comparison of an analytic operator.
struct OperatorCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return error <= tolerance; }
};

/// Relative error max|a - b| / max(max|b|, floor).
double relative_error(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& reference, double floor = 1e-14);

/// Central-difference checks of every kernel operator on a 2x2-element
/// square; deterministic (fixed seed).
std::vector<OperatorCheck> operator_fd_suite(unsigned seed = 7);

/// Runs the acceptance criteria in order. `on_result` is called as each one
/// finishes.
ValidationReport run_validation(const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace cswp
