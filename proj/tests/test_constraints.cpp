#include "constraints.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"

#include <cmath>

using namespace cswp;
using testing::rel_err;

TEST_SUITE("constraints") {
  TEST_CASE("undeformed section has no rotation") {
    const Vec2 X(0.3, -0.4);
    CHECK(rotation_constraint(X, Vec3(X[0], X[1], 0.0)).norm() < 1e-15);
  }

  TEST_CASE("hand values") {
    CHECK((rotation_constraint(Vec2(1, 0), Vec3(1, 0, 2)) - Vec3(0, 2, 0)).norm() < 1e-15);
    Mat3 Mt;
    Mt << 0, 2, 0, 2, 0, 1, 0, 1, 0;
    CHECK((constraint_jacobian(Vec3(1, 0, 2)).transpose() - Mt).norm() < 1e-15);
    const Mat3 M = constraint_jacobian(Vec3(0.4, -0.7, 0.0));
    CHECK((M.col(0) - Vec3(0, 0, -0.7)).norm() < 1e-15);
    CHECK((M.col(1) - Vec3(0, 0, 0.4)).norm() < 1e-15);

    CHECK(constraint_hessian(Vec3(0.3, 0.2, 0.1), Vec3::Zero()).norm() == 0.0);
    Mat3 Xi;
    Xi << 0, -1, 0, -1, 0, 0, 0, 0, 0;
    CHECK((constraint_hessian(Vec3(1, 0, 0), Vec3(0, 0, 1)) - Xi).norm() < 1e-14);
  }

  TEST_CASE("rigid rotation gives the rotation angle") {
    for (double theta : {0.1, -0.4, 1.2, 3.0}) {
      const Eigen::Rotation2Dd R(theta);
      for (const Vec2& X : {Vec2(0.4, 0.1), Vec2(-0.3, 0.2), Vec2(0.1, -0.5)}) {
        const Vec2 y = R * X;
        CHECK(rotation_constraint(X, Vec3(y[0], y[1], 0.0))[2] == doctest::Approx(theta).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("angle wraps across the branch cut") {
    const Vec2 X(-1.0, 1e-3);
    const Vec3 x(-1.0, -1e-3, 0.0);
    CHECK(rotation_constraint(X, x)[2] == doctest::Approx(2 * std::atan(1e-3)).epsilon(1e-9));
  }

  TEST_CASE("origin is singular") {
    CHECK_THROWS_AS(rotation_constraint(Vec2(0.1, 0.1), Vec3(0.0, 0.0, 0.3)), SingularPointError);
  }

  TEST_CASE("finite differences") {
    std::mt19937 g(9);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const double h = 1e-6;
    for (int k = 0; k < 50; ++k) {
      const Vec3 x(d(g), d(g), d(g));
      const Vec2 X(x[0] + 0.01, x[1] - 0.01);
      const Vec3 mu(d(g), d(g), d(g));
      Mat3 fdj, fdh;
      for (int c = 0; c < 3; ++c) {
        const Vec3 e = h * Vec3::Unit(c);
        fdj.col(c) = (rotation_constraint(X, x + e) - rotation_constraint(X, x - e)) / (2 * h);
        fdh.col(c) = (constraint_jacobian(x + e) * mu - constraint_jacobian(x - e) * mu) / (2 * h);
      }
      CHECK(rel_err(constraint_jacobian(x).transpose(), fdj) < 1e-7);
      const Mat3 Xi = constraint_hessian(x, mu);
      CHECK(rel_err(Xi, fdh) < 1e-6);
      CHECK((Xi - Xi.transpose()).norm() < 1e-12 * (1 + Xi.norm()));
    }
  }
}
