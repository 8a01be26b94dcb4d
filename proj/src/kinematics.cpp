#include "kinematics.hpp"

namespace cswp {

Mat3 deformation_gradient(const Vec2& X, const Vec3& u, const Mat32& grad_u, const StrainPrescriptors& sp) {
  const Vec3 x = current_position(X, u);
  Mat3 F = Mat3::Identity();
  F.col(0) += grad_u.col(0);
  F.col(1) += grad_u.col(1);
  F.col(2) += sp.eps + sp.kappa.cross(x);
  return F;
}

Vec6 green_lagrange(const Mat3& F) { return strain_to_voigt(0.5 * (F.transpose() * F - Mat3::Identity())); }

PointKinematics point_kinematics(const BasisEval& basis, const VecX& state, const StrainPrescriptors& sp) {
  PointKinematics pk;
  for (std::size_t k = 0; k < basis.indices.size(); ++k) {
    const Vec3 uI = state.segment<3>(3 * basis.indices[k]);
    pk.u += basis.N[k] * uI;
    pk.grad_u.col(0) += basis.grad[k][0] * uI;
    pk.grad_u.col(1) += basis.grad[k][1] * uI;
  }
  pk.x = current_position(basis.X, pk.u);
  pk.F = deformation_gradient(basis.X, pk.u, pk.grad_u, sp);
  pk.strain = green_lagrange(pk.F);
  return pk;
}

Mat63 b_operator(const Mat3& F, const Vec3& kappa, double N, const Vec2& gradN) {
  const Mat3 K = skew(kappa);
  const Vec3 F1 = F.col(0), F2 = F.col(1), F3 = F.col(2);
  Mat63 B;
  B.row(0) = gradN[0] * F1.transpose();
  B.row(1) = gradN[1] * F2.transpose();
  B.row(2) = -N * (K * F3).transpose();
  B.row(3) = (gradN[1] * F1 + gradN[0] * F2).transpose();
  B.row(4) = (gradN[1] * F3 - N * (K * F2)).transpose();
  B.row(5) = (gradN[0] * F3 - N * (K * F1)).transpose();
  return B;
}

Mat3 geometric_operator(const Vec3& kappa, double NI, double NJ, const Vec2& gradI, const Vec2& gradJ,
                        const Vec6& S) {
  const Mat3 K = skew(kappa);
  const double diag = gradJ[0] * gradI[0] * S[0] + gradJ[1] * gradI[1] * S[1] +
                      (gradJ[1] * gradI[0] + gradJ[0] * gradI[1]) * S[3];
  Mat3 G = diag * Mat3::Identity();
  G -= NJ * NI * S[2] * (K * K);
  G += ((gradI[1] * NJ - gradJ[1] * NI) * S[4] + (gradI[0] * NJ - gradJ[0] * NI) * S[5]) * K;
  return G;
}

Vec3 prescriptor_direction(const Vec3& x, int q) {
  const StrainPrescriptors axis = prescriptor_axis(q);
  return axis.eps + axis.kappa.cross(x);
}

Vec6 strain_sensitivity(const Mat3& F, const Vec3& x, int q) {
  const Vec3 w = prescriptor_direction(x, q);
  Vec6 e = Vec6::Zero();
  e[2] = F.col(2).dot(w);
  e[4] = F.col(1).dot(w);
  e[5] = F.col(0).dot(w);
  return e;
}

Mat63 b_operator_sensitivity(const Mat3& F, const Vec3& x, const Vec3& kappa, int q, double N, const Vec2& gradN) {
  const Vec3 w = prescriptor_direction(x, q);
  const Mat3 K = skew(kappa);
  const Mat3 Kq = skew(prescriptor_axis(q).kappa);
  Mat63 B = Mat63::Zero();
  B.row(2) = -N * (Kq * F.col(2) + K * w).transpose();
  B.row(4) = (gradN[1] * w - N * (Kq * F.col(1))).transpose();
  B.row(5) = (gradN[0] * w - N * (Kq * F.col(0))).transpose();
  return B;
}

Mat3 partial_deformation_gradient_sensitivity(const Vec3& x, int q) {
  Mat3 Fq = Mat3::Zero();
  Fq.col(2) = prescriptor_direction(x, q);
  return Fq;
}

Mat3 total_deformation_gradient_sensitivity(const Vec3& x, const Vec3& u_q, const Mat32& grad_u_q, const Vec3& kappa,
                                            int q) {
  Mat3 Fq;
  Fq.col(0) = grad_u_q.col(0);
  Fq.col(1) = grad_u_q.col(1);
  Fq.col(2) = prescriptor_direction(x, q) + kappa.cross(u_q);
  return Fq;
}

}  // namespace cswp
