#include "material.hpp"

#include "errors.hpp"

#include <cmath>

namespace cswp {

namespace {

// Voigt matrix of (A (x) B)_ijkl = A_ij B_kl.
Mat6 voigt_outer(const Mat3& A, const Mat3& B) {
  Mat6 D;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      D(a, b) = A(kVoigtPairs[a][0], kVoigtPairs[a][1]) * B(kVoigtPairs[b][0], kVoigtPairs[b][1]);
  return D;
}

// Voigt matrix of 1/2 (A_ik A_jl + A_il A_jk).
Mat6 voigt_symprod(const Mat3& A) {
  Mat6 D;
  for (int a = 0; a < 6; ++a) {
    const int i = kVoigtPairs[a][0], j = kVoigtPairs[a][1];
    for (int b = 0; b < 6; ++b) {
      const int k = kVoigtPairs[b][0], l = kVoigtPairs[b][1];
      D(a, b) = 0.5 * (A(i, k) * A(j, l) + A(i, l) * A(j, k));
    }
  }
  return D;
}

struct Invariants {
  Mat3 C;
  Mat3 Cinv;
  double J;
  double I1;
  double I2;
};

Invariants invariants(const Vec6& strain) {
  Invariants inv;
  inv.C = 2.0 * voigt_to_strain(strain) + Mat3::Identity();
  const double detC = inv.C.determinant();
  if (!(detC > 0.0)) throw InvertedStateError("inverted material state: det C <= 0");
  inv.J = std::sqrt(detC);
  if (inv.J < kMinJacobian) throw InvertedStateError("inverted material state: J below admissibility guard");
  inv.Cinv = inv.C.inverse();
  inv.I1 = inv.C.trace();
  inv.I2 = 0.5 * (inv.I1 * inv.I1 - (inv.C * inv.C).trace());
  return inv;
}

MaterialResponse evaluate_svk(const Material& m, const Vec6& strain) {
  const Mat3 E = voigt_to_strain(strain);
  const Mat3 C = 2.0 * E + Mat3::Identity();
  if (!(C.determinant() > 0.0)) throw InvertedStateError("inverted material state: det C <= 0");
  const double trE = E.trace();
  MaterialResponse r;
  r.energy = 0.5 * m.lambda * trE * trE + m.mu * (E * E).trace();
  r.stress = stress_to_voigt(m.lambda * trE * Mat3::Identity() + 2.0 * m.mu * E);
  const Mat3 I = Mat3::Identity();
  r.tangent = m.lambda * voigt_outer(I, I) + 2.0 * m.mu * voigt_symprod(I);
  return r;
}

// Isochoric (I1bar, I2bar) terms plus the volumetric K/2 (J-1)^2 term.
MaterialResponse evaluate_isochoric(double c10, double c01, double bulk, const Vec6& strain) {
  const Invariants v = invariants(strain);
  const Mat3 I = Mat3::Identity();
  const double J23 = std::pow(v.J, -2.0 / 3.0);
  const double J43 = J23 * J23;

  MaterialResponse r;
  r.energy = c10 * (J23 * v.I1 - 3.0) + 0.5 * bulk * (v.J - 1.0) * (v.J - 1.0);
  Mat3 S = 2.0 * c10 * J23 * (I - v.I1 / 3.0 * v.Cinv) + bulk * (v.J - 1.0) * v.J * v.Cinv;

  const Mat6 CiCi = voigt_outer(v.Cinv, v.Cinv);
  const Mat6 symCi = voigt_symprod(v.Cinv);
  Mat6 D = 4.0 * c10 * J23 *
           (-1.0 / 3.0 * (voigt_outer(I, v.Cinv) + voigt_outer(v.Cinv, I)) + v.I1 / 9.0 * CiCi + v.I1 / 3.0 * symCi);
  D += bulk * ((2.0 * v.J * v.J - v.J) * CiCi - 2.0 * (v.J * v.J - v.J) * symCi);

  if (c01 != 0.0) {
    const Mat3 T0 = v.I1 * I - v.C;
    r.energy += c01 * (J43 * v.I2 - 3.0);
    S += 2.0 * c01 * J43 * (T0 - 2.0 / 3.0 * v.I2 * v.Cinv);
    D += 4.0 * c01 * J43 *
         (-2.0 / 3.0 * (voigt_outer(T0, v.Cinv) + voigt_outer(v.Cinv, T0)) + 4.0 / 9.0 * v.I2 * CiCi +
          voigt_outer(I, I) - voigt_symprod(I) + 2.0 / 3.0 * v.I2 * symCi);
  }
  r.stress = stress_to_voigt(S);
  r.tangent = D;
  return r;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ParameterError(std::string("material parameter ") + what + " must be positive");
}

}  // namespace

Material Material::svk(double lambda, double mu) {
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  Material m;
  m.kind = MaterialKind::SaintVenantKirchhoff;
  m.lambda = lambda;
  m.mu = mu;
  return m;
}

Material Material::neo_hooke(double a10, double bulk) {
  require_positive(a10, "A10");
  require_positive(bulk, "K");
  Material m;
  m.kind = MaterialKind::NeoHooke;
  m.a10 = a10;
  m.bulk = bulk;
  return m;
}

Material Material::mooney_rivlin(double b10, double b01, double bulk) {
  require_positive(b10, "B10");
  require_positive(b01, "B01");
  require_positive(bulk, "K");
  Material m;
  m.kind = MaterialKind::MooneyRivlin;
  m.b10 = b10;
  m.b01 = b01;
  m.bulk = bulk;
  return m;
}

Material Material::reference(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::SaintVenantKirchhoff:
      return svk(121.0, 80.0);
    case MaterialKind::NeoHooke:
      return neo_hooke(40.0, 174.34);
    case MaterialKind::MooneyRivlin:
      return mooney_rivlin(30.0, 10.0, 174.34);
  }
  throw ParameterError("unknown material kind");
}

double Material::shear_modulus() const {
  switch (kind) {
    case MaterialKind::SaintVenantKirchhoff:
      return mu;
    case MaterialKind::NeoHooke:
      return 2.0 * a10;
    case MaterialKind::MooneyRivlin:
      return 2.0 * (b10 + b01);
  }
  return 0.0;
}

std::string Material::name() const {
  switch (kind) {
    case MaterialKind::SaintVenantKirchhoff:
      return "svk";
    case MaterialKind::NeoHooke:
      return "neohooke";
    case MaterialKind::MooneyRivlin:
      return "mooneyrivlin";
  }
  return "unknown";
}

MaterialResponse evaluate(const Material& m, const Vec6& strain) {
  switch (m.kind) {
    case MaterialKind::SaintVenantKirchhoff:
      return evaluate_svk(m, strain);
    case MaterialKind::NeoHooke:
      return evaluate_isochoric(m.a10, 0.0, m.bulk, strain);
    case MaterialKind::MooneyRivlin:
      return evaluate_isochoric(m.b10, m.b01, m.bulk, strain);
  }
  throw ParameterError("unknown material kind");
}

double energy(const Material& m, const Vec6& strain) { return evaluate(m, strain).energy; }
Vec6 stress(const Material& m, const Vec6& strain) { return evaluate(m, strain).stress; }
Mat6 tangent(const Material& m, const Vec6& strain) { return evaluate(m, strain).tangent; }

}  // namespace cswp
