#pragma once

#include "types.hpp"

namespace cswp {

/// Squared in-plane radius below which the rotation constraint is undefined.
inline constexpr double kMinRadiusSquared = 1e-12;

/// {x}_x = (x2 x3, x1 x3, angle(x1, x2) - angle(X1, X2)), the angle
/// difference wrapped to (-pi, pi].
Vec3 rotation_constraint(const Vec2& X, const Vec3& x);

/// Jacobian M with d{x}_x = M^T dx.
Mat3 constraint_jacobian(const Vec3& x);

/// Xi = d(M mu)/dx; symmetric.
Mat3 constraint_hessian(const Vec3& x, const Vec3& mu);

}  // namespace cswp
