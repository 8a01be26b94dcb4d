#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>

namespace cswp {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat63 = Eigen::Matrix<double, 6, 3>;
using VecX = Eigen::VectorXd;

/// Voigt ordering (11, 22, 33, 12, 23, 13). Strain vectors carry doubled
/// shear components, stress vectors do not.
inline constexpr std::array<std::array<int, 2>, 6> kVoigtPairs{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}};

/// Index of the Voigt slot for tensor indices (i, j).
constexpr int voigt_index(int i, int j) {
  if (i == j) return i;
  const int lo = i < j ? i : j;
  const int hi = i < j ? j : i;
  if (lo == 0 && hi == 1) return 3;
  if (lo == 1 && hi == 2) return 4;
  return 5;
}

/// Voigt strain vector (engineering shear) from a symmetric tensor.
inline Vec6 strain_to_voigt(const Mat3& e) {
  Vec6 v;
  v << e(0, 0), e(1, 1), e(2, 2), 2.0 * e(0, 1), 2.0 * e(1, 2), 2.0 * e(0, 2);
  return v;
}

inline Mat3 voigt_to_strain(const Vec6& v) {
  Mat3 e;
  e << v[0], 0.5 * v[3], 0.5 * v[5],
       0.5 * v[3], v[1], 0.5 * v[4],
       0.5 * v[5], 0.5 * v[4], v[2];
  return e;
}

inline Vec6 stress_to_voigt(const Mat3& s) {
  Vec6 v;
  v << s(0, 0), s(1, 1), s(2, 2), s(0, 1), s(1, 2), s(0, 2);
  return v;
}

inline Mat3 voigt_to_stress(const Vec6& v) {
  Mat3 s;
  s << v[0], v[3], v[5],
       v[3], v[1], v[4],
       v[5], v[4], v[2];
  return s;
}

/// Cross-product matrix [a]_x with [a]_x b = a x b.
inline Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0.0, -a[2], a[1],
       a[2], 0.0, -a[0],
       -a[1], a[0], 0.0;
  return m;
}

/// The six beam strain measures: two shears and the axial strain, two
/// curvatures and the twist (mm^-1).
struct StrainPrescriptors {
  Vec3 eps = Vec3::Zero();
  Vec3 kappa = Vec3::Zero();

  static StrainPrescriptors from_array(const std::array<double, 6>& q) {
    StrainPrescriptors sp;
    sp.eps << q[0], q[1], q[2];
    sp.kappa << q[3], q[4], q[5];
    return sp;
  }

  std::array<double, 6> to_array() const { return {eps[0], eps[1], eps[2], kappa[0], kappa[1], kappa[2]}; }

  /// Component q in the order (eps1, eps2, eps3, kappa1, kappa2, kappa3).
  double& operator[](int q) { return q < 3 ? eps[q] : kappa[q - 3]; }
  double operator[](int q) const { return q < 3 ? eps[q] : kappa[q - 3]; }

  StrainPrescriptors scaled(double theta) const {
    StrainPrescriptors sp;
    sp.eps = theta * eps;
    sp.kappa = theta * kappa;
    return sp;
  }

  bool is_zero() const { return eps.isZero(0.0) && kappa.isZero(0.0); }
};

/// Unit perturbation of prescriptor q: (eps_,q, kappa_,q).
inline StrainPrescriptors prescriptor_axis(int q) {
  StrainPrescriptors sp;
  sp[q] = 1.0;
  return sp;
}

}  // namespace cswp
