#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cswp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments (degree, element count, material moduli, options).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Singular or non-positive geometry Jacobian.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// det C <= 0 (or J below the admissibility guard) at a material point.
class InvertedStateError : public Error {
 public:
  explicit InvertedStateError(const std::string& what, double x1 = 0.0, double x2 = 0.0)
      : Error(what), x1_(x1), x2_(x2) {}
  double x1() const { return x1_; }
  double x2() const { return x2_; }

 private:
  double x1_;
  double x2_;
};

/// Constraint evaluated at (or too close to) the section origin.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// Direct factorization failed or the system is numerically rank deficient.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Newton did not reach the residual tolerance.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace cswp
