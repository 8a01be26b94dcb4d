#pragma once

#include "assembly.hpp"
#include "material.hpp"

#include <array>

namespace cswp::pk1 {

/// Reference formulation in terms of the first Piola-Kirchhoff stress and the
/// full fourth-order tangent. Independent of the Voigt kernels in assembly;
/// used to cross-check them.

/// A_iJkL = dP_iJ / dF_kL.
struct Pk1Tangent {
  std::array<double, 81> a{};

  double& operator()(int i, int J, int k, int L) { return a[((i * 3 + J) * 3 + k) * 3 + L]; }
  double operator()(int i, int J, int k, int L) const { return a[((i * 3 + J) * 3 + k) * 3 + L]; }

  /// (A : dF)_iJ = A_iJkL dF_kL.
  Mat3 contract(const Mat3& dF) const;
};

/// P = F S(E(F)).
Mat3 pk1_stress(const Material& material, const Mat3& F);

/// A_iJkL = delta_ik S_JL + F_iA CC_AJBL F_kB with CC = 2 dS/dC.
Pk1Tangent pk1_tangent(const Material& material, const Mat3& F);

System assemble_pk1(const Section& section, const Material& material, const StrainPrescriptors& sp,
                    const VecX& state, int workers = 1);

VecX assemble_pk1_residual(const Section& section, const Material& material, const StrainPrescriptors& sp,
                           const VecX& state, int workers = 1);

/// Partial derivative of the PK1 residual w.r.t. prescriptor q.
VecX assemble_pk1_sensitivity_rhs(const Section& section, const Material& material, const StrainPrescriptors& sp,
                                  const VecX& state, int q, int workers = 1);

}  // namespace cswp::pk1
