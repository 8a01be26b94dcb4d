#pragma once

#include "types.hpp"

#include <string>

namespace cswp {

enum class MaterialKind { SaintVenantKirchhoff, NeoHooke, MooneyRivlin };

/// Isotropic hyperelastic model. Moduli in GPa.
///
/// SVK:  psi = lambda/8 tr(C-I)^2 + mu/4 tr((C-I)^2)
/// NH:   psi = A10 (I1bar - 3) + K/2 (J-1)^2
/// MR:   psi = B10 (I1bar - 3) + B01 (I2bar - 3) + K/2 (J-1)^2
///
/// with I1bar = J^(-2/3) tr C, I2bar = J^(-4/3) (tr^2 C - tr C^2) / 2.
struct Material {
  MaterialKind kind = MaterialKind::SaintVenantKirchhoff;
  double lambda = 0.0;
  double mu = 0.0;
  double a10 = 0.0;
  double b10 = 0.0;
  double b01 = 0.0;
  double bulk = 0.0;

  static Material svk(double lambda, double mu);
  static Material neo_hooke(double a10, double bulk);
  static Material mooney_rivlin(double b10, double b01, double bulk);

  /// Reference parameter set: lambda 121, mu 80, A10 40, B10 30, B01 10, K 174.34.
  static Material reference(MaterialKind kind);

  /// Small-strain shear modulus.
  double shear_modulus() const;

  std::string name() const;
};

/// Strain energy density, PK2 stress (Voigt) and dS/dE (Voigt, engineering
/// strain) at one material point.
struct MaterialResponse {
  double energy = 0.0;
  Vec6 stress = Vec6::Zero();
  Mat6 tangent = Mat6::Zero();
};

/// Admissibility guard on J = sqrt(det C).
inline constexpr double kMinJacobian = 1e-6;

double energy(const Material& m, const Vec6& strain);
Vec6 stress(const Material& m, const Vec6& strain);
Mat6 tangent(const Material& m, const Vec6& strain);

/// All three quantities in one pass; used by the assembly loops.
MaterialResponse evaluate(const Material& m, const Vec6& strain);

}  // namespace cswp
