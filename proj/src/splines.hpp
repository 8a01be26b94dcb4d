#pragma once

#include "types.hpp"

#include <vector>

namespace cswp {

/// Clamped knot vector on [0, 1].
struct KnotVector {
  int degree = 0;
  std::vector<double> knots;

  int num_basis() const { return static_cast<int>(knots.size()) - degree - 1; }

  /// Distinct breakpoints, including 0 and 1.
  std::vector<double> breakpoints() const;

  /// Span index s with knots[s] <= t < knots[s+1]; the last span is closed.
  int find_span(double t) const;

  /// Values and first derivatives of the degree+1 functions active in `span`.
  void eval(int span, double t, double* values, double* derivs) const;
};

/// Uniform clamped knot vector with n_el spans; p + n_el functions.
KnotVector open_knot_vector(int p, int n_el);

/// Single tensor-product NURBS patch describing the cross-section in mm.
/// Control points and weights are stored with the xi index running fastest.
struct Patch {
  KnotVector xi;
  KnotVector eta;
  std::vector<Vec2> points;
  std::vector<double> weights;

  int n1() const { return xi.num_basis(); }
  int n2() const { return eta.num_basis(); }
  int num_basis() const { return n1() * n2(); }
  int index(int i, int j) const { return i + n1() * j; }
};

/// Rational basis at one parametric point, mapped to the physical section.
struct BasisEval {
  std::vector<int> indices;
  std::vector<double> N;
  std::vector<double> dN_dxi;
  std::vector<double> dN_deta;
  std::vector<Vec2> grad;
  Vec2 X = Vec2::Zero();
  double det_jacobian = 0.0;
  /// det J times the quadrature weight; 0 outside a quadrature loop.
  double dA = 0.0;
};

BasisEval eval_basis(const Patch& patch, double xi, double eta);

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int count);

/// Number of Gauss points per direction used for degree p: p + 1, raised to
/// the next even number so no node sits at a span midpoint.
int quadrature_order(int p);

struct QuadElement {
  std::vector<int> indices;
  std::vector<BasisEval> points;
};

/// Precomputed basis data for every quadrature point, element by element.
struct QuadratureData {
  int num_basis = 0;
  std::vector<QuadElement> elements;

  std::size_t num_points() const;
};

/// Builds the element-wise quadrature for `patch`. Throws GeometryError when a
/// point has a non-positive Jacobian or lies within 1e-6 mm of the origin.
QuadratureData build_quadrature(const Patch& patch);

/// Unit square (side 1 mm) centered at the origin.
Patch unit_square_patch(int p, int n_el);

/// Rectangle |X1| < a, |X2| < b (half-widths in mm).
Patch rectangle_patch(double a, double b, int p, int n_el);

/// Unit disc (radius 1 mm) as a single rational patch.
Patch unit_circle_patch(int p, int n_el);

}  // namespace cswp
