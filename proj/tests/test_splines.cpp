#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"
#include "splines.hpp"

#include <cmath>

using namespace cswp;

namespace {

double integrate(const Patch& patch, double (*f)(const Vec2&)) {
  const QuadratureData q = build_quadrature(patch);
  double s = 0.0;
  for (const auto& el : q.elements)
    for (const auto& be : el.points) s += f(be.X) * be.dA;
  return s;
}

}  // namespace

TEST_SUITE("splines") {
  TEST_CASE("clamped knot vectors") {
    const KnotVector k = open_knot_vector(3, 5);
    const std::vector<double> want{0, 0, 0, 0, 0.2, 0.4, 0.6, 0.8, 1, 1, 1, 1};
    REQUIRE(k.knots.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) CHECK(k.knots[i] == doctest::Approx(want[i]).epsilon(1e-15));
    CHECK(k.num_basis() == 8);

    const KnotVector lin = open_knot_vector(1, 1);
    CHECK(lin.knots == std::vector<double>{0, 0, 1, 1});
    CHECK(lin.num_basis() == 2);
    CHECK(unit_square_patch(3, 5).num_basis() == 64);
    CHECK(k.breakpoints().size() == 6);
  }

  TEST_CASE("span lookup closes the last span") {
    const KnotVector k = open_knot_vector(2, 4);
    CHECK(k.find_span(0.0) == 2);
    CHECK(k.find_span(0.3) == 3);
    CHECK(k.find_span(1.0) == 5);
  }

  TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(open_knot_vector(0, 3), ParameterError);
    CHECK_THROWS_AS(open_knot_vector(2, 0), ParameterError);
    CHECK_THROWS_AS(rectangle_patch(-1.0, 1.0, 3, 2), ParameterError);
    CHECK_THROWS_AS(unit_circle_patch(1, 2), ParameterError);
    CHECK_THROWS_AS(gauss_legendre(0), ParameterError);
  }

  TEST_CASE("partition of unity and gradient sums") {
    std::mt19937 g(3);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (const Patch& patch : {unit_square_patch(3, 5), unit_circle_patch(3, 5), rectangle_patch(1.0, 0.5, 2, 3)}) {
      for (int k = 0; k < 50; ++k) {
        const BasisEval be = eval_basis(patch, d(g), d(g));
        double s = 0.0;
        Vec2 gs = Vec2::Zero();
        for (size_t i = 0; i < be.N.size(); ++i) {
          s += be.N[i];
          gs += be.grad[i];
        }
        CHECK(std::abs(s - 1.0) < 1e-12);
        CHECK(gs.norm() < 1e-10);
      }
    }
  }

  TEST_CASE("square patch maps gradients with a unit Jacobian") {
    const Patch patch = unit_square_patch(3, 5);
    const BasisEval be = eval_basis(patch, 0.37, 0.81);
    CHECK(be.det_jacobian == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i < be.N.size(); ++i) {
      CHECK(std::abs(be.grad[i][0] - be.dN_dxi[i]) < 1e-12);
      CHECK(std::abs(be.grad[i][1] - be.dN_deta[i]) < 1e-12);
    }
    CHECK(be.X[0] == doctest::Approx(-0.13).epsilon(1e-12));
    CHECK(be.X[1] == doctest::Approx(0.31).epsilon(1e-12));
  }

  TEST_CASE("gauss rules integrate polynomials exactly") {
    for (int n = 1; n <= 6; ++n) {
      const GaussRule r = gauss_legendre(n);
      for (int deg = 0; deg <= 2 * n - 1; ++deg) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
        CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
      }
    }
    CHECK(quadrature_order(1) == 2);
    CHECK(quadrature_order(2) == 4);
    CHECK(quadrature_order(3) == 4);
    CHECK(quadrature_order(4) == 6);
  }

  TEST_CASE("square moments") {
    const Patch sq = unit_square_patch(3, 5);
    CHECK(sq.n1() == 8);
    CHECK(sq.n2() == 8);
    CHECK(std::abs(integrate(sq, [](const Vec2&) { return 1.0; }) - 1.0) < 1e-12);
    CHECK(std::abs(integrate(sq, [](const Vec2& X) { return X[0]; })) < 1e-12);
    CHECK(std::abs(integrate(sq, [](const Vec2& X) { return X[1]; })) < 1e-12);
    CHECK(std::abs(integrate(sq, [](const Vec2& X) { return X[0] * X[0]; }) - 1.0 / 12.0) < 1e-8);
  }

  TEST_CASE("rectangle moments") {
    const Patch r = rectangle_patch(1.0, 0.5, 3, 5);
    CHECK(std::abs(integrate(r, [](const Vec2&) { return 1.0; }) - 2.0) < 1e-12);
    CHECK(std::abs(integrate(r, [](const Vec2& X) { return X[0] * X[1]; })) < 1e-10);
    const Patch sq = rectangle_patch(0.5, 0.5, 3, 5);
    const Patch ref = unit_square_patch(3, 5);
    for (size_t i = 0; i < sq.points.size(); ++i) CHECK((sq.points[i] - ref.points[i]).norm() < 1e-14);
  }

  TEST_CASE("circle geometry") {
    const Patch c = unit_circle_patch(3, 5);
    CHECK(std::abs(integrate(c, [](const Vec2&) { return 1.0; }) - M_PI) < 1e-6);
    CHECK(std::abs(integrate(c, [](const Vec2& X) { return X[0]; })) < 1e-8);
    CHECK(std::abs(integrate(c, [](const Vec2& X) { return X[1]; })) < 1e-8);
    CHECK(std::abs(integrate(c, [](const Vec2& X) { return X.squaredNorm(); }) - M_PI / 2) < 1e-6);
    // the four patch corners are degenerate
    for (int k = 1; k < 20; ++k) {
      const double t = k / 20.0;
      for (const Vec2& uv : {Vec2(t, 0.0), Vec2(t, 1.0), Vec2(0.0, t), Vec2(1.0, t)})
        CHECK(std::abs(eval_basis(c, uv[0], uv[1]).X.norm() - 1.0) < 1e-10);
    }
  }

  TEST_CASE("quadrature layout") {
    const QuadratureData q = build_quadrature(unit_square_patch(3, 5));
    CHECK(q.elements.size() == 25);
    CHECK(q.num_points() == 25 * 16);
    for (const auto& el : q.elements) CHECK(el.indices.size() == 16);
  }
}
