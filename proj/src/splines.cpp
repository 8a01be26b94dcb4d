#include "splines.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace cswp {

namespace {

// Degree-`deg` functions active in `span` (Cox-de Boor triangle).
void basis_values(const std::vector<double>& U, int span, int deg, double t, double* out) {
  std::vector<double> left(deg + 1), right(deg + 1);
  out[0] = 1.0;
  for (int j = 1; j <= deg; ++j) {
    left[j] = t - U[span + 1 - j];
    right[j] = U[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
}

using Homogeneous = std::vector<Vec3>;

// Bezier degree elevation by one, in homogeneous coordinates.
Homogeneous elevate_bezier(const Homogeneous& P) {
  const int p = static_cast<int>(P.size()) - 1;
  Homogeneous Q(p + 2);
  Q[0] = P[0];
  Q[p + 1] = P[p];
  for (int i = 1; i <= p; ++i) {
    const double a = static_cast<double>(i) / (p + 1);
    Q[i] = a * P[i - 1] + (1.0 - a) * P[i];
  }
  return Q;
}

// Single knot insertion (Boehm). `U` is the knot vector before insertion.
Homogeneous insert_knot(const KnotVector& kv, const Homogeneous& P, double t) {
  const int p = kv.degree;
  const int k = kv.find_span(t);
  const auto& U = kv.knots;
  Homogeneous Q(P.size() + 1);
  for (int i = 0; i <= k - p; ++i) Q[i] = P[i];
  for (int i = k - p + 1; i <= k; ++i) {
    const double a = (t - U[i]) / (U[i + p] - U[i]);
    Q[i] = a * P[i] + (1.0 - a) * P[i - 1];
  }
  for (int i = k + 1; i < static_cast<int>(Q.size()); ++i) Q[i] = P[i - 1];
  return Q;
}

struct HomogeneousGrid {
  int n1 = 0;
  int n2 = 0;
  std::vector<Vec3> pts;  // i + n1 * j

  // Applies `op` to every row (direction xi) or column (direction eta).
  void transform(int direction, const std::function<Homogeneous(const Homogeneous&)>& op) {
    if (direction == 0) {
      std::vector<Vec3> out;
      int m = 0;
      std::vector<Homogeneous> rows;
      for (int j = 0; j < n2; ++j) {
        Homogeneous row(pts.begin() + j * n1, pts.begin() + (j + 1) * n1);
        rows.push_back(op(row));
        m = static_cast<int>(rows.back().size());
      }
      out.resize(static_cast<std::size_t>(m) * n2);
      for (int j = 0; j < n2; ++j)
        for (int i = 0; i < m; ++i) out[i + m * j] = rows[j][i];
      pts = std::move(out);
      n1 = m;
    } else {
      std::vector<Homogeneous> cols;
      int m = 0;
      for (int i = 0; i < n1; ++i) {
        Homogeneous col(n2);
        for (int j = 0; j < n2; ++j) col[j] = pts[i + n1 * j];
        cols.push_back(op(col));
        m = static_cast<int>(cols.back().size());
      }
      std::vector<Vec3> out(static_cast<std::size_t>(n1) * m);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < m; ++j) out[i + n1 * j] = cols[i][j];
      pts = std::move(out);
      n2 = m;
    }
  }
};

KnotVector with_inserted(const KnotVector& kv, double t) {
  KnotVector out = kv;
  out.knots.insert(std::upper_bound(out.knots.begin(), out.knots.end(), t), t);
  return out;
}

void check_degree_elements(int p, int n_el) {
  if (p < 1) throw ParameterError("degree must be >= 1, got " + std::to_string(p));
  if (n_el < 1) throw ParameterError("element count must be >= 1, got " + std::to_string(n_el));
}

}  // namespace

std::vector<double> KnotVector::breakpoints() const {
  std::vector<double> b;
  for (double k : knots)
    if (b.empty() || k > b.back()) b.push_back(k);
  return b;
}

int KnotVector::find_span(double t) const {
  const int n = num_basis();
  if (t >= knots[n]) return n - 1;
  if (t <= knots[degree]) {
    int s = degree;
    while (knots[s + 1] <= t) ++s;
    return s;
  }
  int lo = degree;
  int hi = n;
  int mid = (lo + hi) / 2;
  while (t < knots[mid] || t >= knots[mid + 1]) {
    if (t < knots[mid])
      hi = mid;
    else
      lo = mid;
    mid = (lo + hi) / 2;
  }
  return mid;
}

void KnotVector::eval(int span, double t, double* values, double* derivs) const {
  const int p = degree;
  basis_values(knots, span, p, t, values);
  if (p == 0) {
    derivs[0] = 0.0;
    return;
  }
  std::vector<double> low(p);
  basis_values(knots, span, p - 1, t, low.data());
  for (int r = 0; r <= p; ++r) {
    const int i = span - p + r;
    double d = 0.0;
    if (r >= 1) {
      const double den = knots[i + p] - knots[i];
      if (den > 0.0) d += low[r - 1] / den;
    }
    if (r < p) {
      const double den = knots[i + p + 1] - knots[i + 1];
      if (den > 0.0) d -= low[r] / den;
    }
    derivs[r] = p * d;
  }
}

KnotVector open_knot_vector(int p, int n_el) {
  check_degree_elements(p, n_el);
  KnotVector kv;
  kv.degree = p;
  kv.knots.assign(p + 1, 0.0);
  for (int k = 1; k < n_el; ++k) kv.knots.push_back(static_cast<double>(k) / n_el);
  kv.knots.insert(kv.knots.end(), p + 1, 1.0);
  return kv;
}

BasisEval eval_basis(const Patch& patch, double xi, double eta) {
  const int p1 = patch.xi.degree;
  const int p2 = patch.eta.degree;
  const int s1 = patch.xi.find_span(xi);
  const int s2 = patch.eta.find_span(eta);
  std::vector<double> nx(p1 + 1), dnx(p1 + 1), ny(p2 + 1), dny(p2 + 1);
  patch.xi.eval(s1, xi, nx.data(), dnx.data());
  patch.eta.eval(s2, eta, ny.data(), dny.data());

  const int nen = (p1 + 1) * (p2 + 1);
  BasisEval be;
  be.indices.resize(nen);
  be.N.resize(nen);
  be.dN_dxi.resize(nen);
  be.dN_deta.resize(nen);
  be.grad.resize(nen);

  double W = 0.0, Wxi = 0.0, Weta = 0.0;
  int k = 0;
  for (int b = 0; b <= p2; ++b) {
    for (int a = 0; a <= p1; ++a, ++k) {
      const int idx = patch.index(s1 - p1 + a, s2 - p2 + b);
      const double w = patch.weights[idx];
      be.indices[k] = idx;
      be.N[k] = nx[a] * ny[b] * w;
      be.dN_dxi[k] = dnx[a] * ny[b] * w;
      be.dN_deta[k] = nx[a] * dny[b] * w;
      W += be.N[k];
      Wxi += be.dN_dxi[k];
      Weta += be.dN_deta[k];
    }
  }

  Mat2 J = Mat2::Zero();
  for (int k2 = 0; k2 < nen; ++k2) {
    const double R = be.N[k2] / W;
    be.dN_dxi[k2] = be.dN_dxi[k2] / W - R * Wxi / W;
    be.dN_deta[k2] = be.dN_deta[k2] / W - R * Weta / W;
    be.N[k2] = R;
    const Vec2& P = patch.points[be.indices[k2]];
    be.X += R * P;
    J.col(0) += be.dN_dxi[k2] * P;
    J.col(1) += be.dN_deta[k2] * P;
  }
  be.det_jacobian = J.determinant();
  if (std::abs(be.det_jacobian) < 1e-12)
    throw GeometryError("singular geometry Jacobian at (xi, eta) = (" + std::to_string(xi) + ", " +
                        std::to_string(eta) + ")");
  const Mat2 Jinv_t = J.inverse().transpose();
  for (int k2 = 0; k2 < nen; ++k2) be.grad[k2] = Jinv_t * Vec2(be.dN_dxi[k2], be.dN_deta[k2]);
  return be;
}

GaussRule gauss_legendre(int count) {
  if (count < 1) throw ParameterError("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // map [-1, 1] -> [0, 1], ascending
    rule.nodes[count - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[count - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

int quadrature_order(int p) {
  const int g = p + 1;
  return g % 2 == 0 ? g : g + 1;
}

std::size_t QuadratureData::num_points() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += e.points.size();
  return n;
}

QuadratureData build_quadrature(const Patch& patch) {
  const GaussRule g1 = gauss_legendre(quadrature_order(patch.xi.degree));
  const GaussRule g2 = gauss_legendre(quadrature_order(patch.eta.degree));
  const auto b1 = patch.xi.breakpoints();
  const auto b2 = patch.eta.breakpoints();

  QuadratureData qd;
  qd.num_basis = patch.num_basis();
  for (std::size_t ey = 0; ey + 1 < b2.size(); ++ey) {
    for (std::size_t ex = 0; ex + 1 < b1.size(); ++ex) {
      const double h1 = b1[ex + 1] - b1[ex];
      const double h2 = b2[ey + 1] - b2[ey];
      QuadElement el;
      for (std::size_t gy = 0; gy < g2.nodes.size(); ++gy) {
        for (std::size_t gx = 0; gx < g1.nodes.size(); ++gx) {
          const double xi = b1[ex] + h1 * g1.nodes[gx];
          const double eta = b2[ey] + h2 * g2.nodes[gy];
          BasisEval be = eval_basis(patch, xi, eta);
          if (be.det_jacobian <= 0.0) throw GeometryError("non-positive Jacobian at a quadrature point");
          if (be.X.norm() < 1e-6) throw GeometryError("quadrature point within 1e-6 mm of the section origin");
          be.dA = be.det_jacobian * g1.weights[gx] * g2.weights[gy] * h1 * h2;
          if (el.indices.empty()) el.indices = be.indices;
          el.points.push_back(std::move(be));
        }
      }
      qd.elements.push_back(std::move(el));
    }
  }
  return qd;
}

Patch rectangle_patch(double a, double b, int p, int n_el) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("rectangle half-widths must be positive");
  Patch patch;
  patch.xi = open_knot_vector(p, n_el);
  patch.eta = patch.xi;
  const int n = patch.xi.num_basis();
  std::vector<double> greville(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 1; k <= p; ++k) s += patch.xi.knots[i + k];
    greville[i] = s / p;
  }
  patch.points.resize(static_cast<std::size_t>(n) * n);
  patch.weights.assign(patch.points.size(), 1.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) patch.points[patch.index(i, j)] = Vec2(a * (2.0 * greville[i] - 1.0), b * (2.0 * greville[j] - 1.0));
  return patch;
}

Patch unit_square_patch(int p, int n_el) { return rectangle_patch(0.5, 0.5, p, n_el); }

Patch unit_circle_patch(int p, int n_el) {
  if (p < 2) throw ParameterError("circle patch needs degree >= 2, got " + std::to_string(p));
  check_degree_elements(p, n_el);

  const double s = std::sqrt(0.5);
  const double r2 = std::sqrt(2.0);
  // Biquadratic disc: corner points on the circle at 45 degrees, edge
  // midpoints at the tangent intersections.
  const Vec2 cart[9] = {{-s, -s}, {0.0, -r2}, {s, -s}, {-r2, 0.0}, {0.0, 0.0}, {r2, 0.0}, {-s, s}, {0.0, r2}, {s, s}};
  const double w[9] = {1.0, s, 1.0, s, 1.0, s, 1.0, s, 1.0};

  HomogeneousGrid grid{3, 3, {}};
  for (int k = 0; k < 9; ++k) grid.pts.emplace_back(w[k] * cart[k][0], w[k] * cart[k][1], w[k]);

  for (int d = 2; d < p; ++d) {
    grid.transform(0, elevate_bezier);
    grid.transform(1, elevate_bezier);
  }

  KnotVector kv;
  kv.degree = p;
  kv.knots.assign(p + 1, 0.0);
  kv.knots.insert(kv.knots.end(), p + 1, 1.0);
  for (int k = 1; k < n_el; ++k) {
    const double t = static_cast<double>(k) / n_el;
    auto op = [&](const Homogeneous& P) { return insert_knot(kv, P, t); };
    grid.transform(0, op);
    grid.transform(1, op);
    kv = with_inserted(kv, t);
  }

  Patch patch;
  patch.xi = kv;
  patch.eta = kv;
  for (const Vec3& h : grid.pts) {
    patch.points.emplace_back(h[0] / h[2], h[1] / h[2]);
    patch.weights.push_back(h[2]);
  }
  return patch;
}

}  // namespace cswp
