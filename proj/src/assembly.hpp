#pragma once

#include "material.hpp"
#include "splines.hpp"
#include "types.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace cswp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// A discretized cross-section: geometry plus the quadrature data reused by
/// every assembly.
struct Section {
  Patch patch;
  QuadratureData quadrature;

  explicit Section(Patch p) : patch(std::move(p)), quadrature(build_quadrature(patch)) {}

  int num_basis() const { return patch.num_basis(); }
  /// 3(n + 2): control-point displacements, then lambda, then mu.
  int num_dofs() const { return 3 * num_basis() + 6; }
  int lambda_offset() const { return 3 * num_basis(); }
  int mu_offset() const { return 3 * num_basis() + 3; }
  /// Largest distance of a control point from the origin.
  double radius() const;
};

struct System {
  VecX residual;
  SparseMatrix tangent;
};

/// Per-element local contributions, indexed like QuadElement::indices.
struct ElementContribution {
  VecX fu;
  Vec3 f_lambda = Vec3::Zero();
  Vec3 f_mu = Vec3::Zero();
  Eigen::MatrixXd kuu;
  Eigen::MatrixXd kul;
  Eigen::MatrixXd kum;
};

/// Scatters element contributions in element order.
System reduce_contributions(const Section& section, const std::vector<ElementContribution>& parts, bool with_tangent);

/// Constraint parts shared by both formulations at one point: adds
/// (lambda + M mu) N_k to fu, x and {x}_x to the multiplier residuals, and
/// (optionally) N_k Xi N_l, N_k I, N_k M to the local tangent.
void add_constraint_terms(const BasisEval& basis, const Vec3& x, const Vec3& lambda, const Vec3& mu,
                          ElementContribution& out, bool with_tangent);

ElementContribution make_contribution(std::size_t nen, bool with_tangent);

/// Throws InvertedStateError when det F <= 0 at the point X.
void check_orientation(const Mat3& F, const Vec2& X);

// ---- PK2 (Voigt) formulation ----

VecX assemble_residual(const Section& section, const Material& material, const StrainPrescriptors& sp,
                       const VecX& state, int workers = 1);

SparseMatrix assemble_tangent(const Section& section, const Material& material, const StrainPrescriptors& sp,
                              const VecX& state, int workers = 1);

System assemble_system(const Section& section, const Material& material, const StrainPrescriptors& sp,
                       const VecX& state, int workers = 1);

/// Partial derivative of the residual w.r.t. prescriptor q at a frozen state.
/// The multiplier blocks are zero.
VecX assemble_sensitivity_rhs(const Section& section, const Material& material, const StrainPrescriptors& sp,
                              const VecX& state, int q, int workers = 1);

}  // namespace cswp
