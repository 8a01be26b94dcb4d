#pragma once

#include "splines.hpp"
#include "types.hpp"

namespace cswp {

using Mat32 = Eigen::Matrix<double, 3, 2>;

/// Kinematic state at one section point. The reference section is planar,
/// so x = (X1 + u1, X2 + u2, u3).
struct PointKinematics {
  Vec3 x = Vec3::Zero();
  Vec3 u = Vec3::Zero();
  Mat32 grad_u = Mat32::Zero();
  Mat3 F = Mat3::Identity();
  Vec6 strain = Vec6::Zero();
};

inline Vec3 current_position(const Vec2& X, const Vec3& u) { return Vec3(X[0] + u[0], X[1] + u[1], u[2]); }

/// F = I + u_,a (x) e_a + (eps + [kappa]_x x) (x) e_3.
Mat3 deformation_gradient(const Vec2& X, const Vec3& u, const Mat32& grad_u, const StrainPrescriptors& sp);

/// E = (F^T F - I) / 2 in Voigt form with doubled shears.
Vec6 green_lagrange(const Mat3& F);

/// Interpolates u and grad u from the control-point displacements stored in
/// the first 3n entries of `state` and evaluates F and E.
PointKinematics point_kinematics(const BasisEval& basis, const VecX& state, const StrainPrescriptors& sp);

/// Strain-displacement operator: dE_voigt = B_I du_I.
Mat63 b_operator(const Mat3& F, const Vec3& kappa, double N, const Vec2& gradN);

/// sum_i d(B_I^T row i)/du_J * S_i: geometric stiffness block for the pair (I, J).
Mat3 geometric_operator(const Vec3& kappa, double NI, double NJ, const Vec2& gradI, const Vec2& gradJ,
                        const Vec6& S);

/// w_q = eps_,q + [kappa_,q]_x x for prescriptor axis q in 0..5.
Vec3 prescriptor_direction(const Vec3& x, int q);

/// Partial derivative of E_voigt w.r.t. prescriptor q at frozen displacements.
Vec6 strain_sensitivity(const Mat3& F, const Vec3& x, int q);

/// Partial derivative of B_I w.r.t. prescriptor q at frozen displacements.
Mat63 b_operator_sensitivity(const Mat3& F, const Vec3& x, const Vec3& kappa, int q, double N, const Vec2& gradN);

/// dF/dq at frozen displacements: columns (0, 0, w_q).
Mat3 partial_deformation_gradient_sensitivity(const Vec3& x, int q);

/// Total dF/dq including the warping sensitivity u_,q:
/// columns (u_,q1, u_,q2, w_q + [kappa]_x u_,q).
Mat3 total_deformation_gradient_sensitivity(const Vec3& x, const Vec3& u_q, const Mat32& grad_u_q, const Vec3& kappa,
                                            int q);

}  // namespace cswp
