#include "constraints.hpp"

#include "errors.hpp"

#include <cmath>
#include <numbers>

namespace cswp {

namespace {

double checked_radius_squared(double x1, double x2) {
  const double r2 = x1 * x1 + x2 * x2;
  if (!(r2 > kMinRadiusSquared)) throw SingularPointError("rotation constraint evaluated at the section origin");
  return r2;
}

}  // namespace

Vec3 rotation_constraint(const Vec2& X, const Vec3& x) {
  checked_radius_squared(x[0], x[1]);
  checked_radius_squared(X[0], X[1]);
  double dtheta = std::atan2(x[1], x[0]) - std::atan2(X[1], X[0]);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  while (dtheta > std::numbers::pi) dtheta -= two_pi;
  while (dtheta <= -std::numbers::pi) dtheta += two_pi;
  return Vec3(x[1] * x[2], x[0] * x[2], dtheta);
}

Mat3 constraint_jacobian(const Vec3& x) {
  const double r2 = checked_radius_squared(x[0], x[1]);
  Mat3 Mt;
  Mt << 0.0, x[2], x[1],
        x[2], 0.0, x[0],
        -x[1] / r2, x[0] / r2, 0.0;
  return Mt.transpose();
}

Mat3 constraint_hessian(const Vec3& x, const Vec3& mu) {
  const double r2 = checked_radius_squared(x[0], x[1]);
  const double r4 = r2 * r2;
  const double a = mu[2] * 2.0 * x[0] * x[1] / r4;
  const double b = mu[2] * (x[1] * x[1] - x[0] * x[0]) / r4;
  Mat3 Xi;
  Xi << a, b, mu[1],
        b, -a, mu[0],
        mu[1], mu[0], 0.0;
  return Xi;
}

}  // namespace cswp
