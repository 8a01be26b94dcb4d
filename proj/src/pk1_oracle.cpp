#include "pk1_oracle.hpp"

#include "errors.hpp"
#include "parallel.hpp"

namespace cswp::pk1 {

Mat3 Pk1Tangent::contract(const Mat3& dF) const {
  Mat3 out = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int J = 0; J < 3; ++J) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int L = 0; L < 3; ++L) s += (*this)(i, J, k, L) * dF(k, L);
      out(i, J) = s;
    }
  return out;
}

namespace {

Vec6 strain_of(const Mat3& F) {
  const Mat3 E = 0.5 * (F.transpose() * F - Mat3::Identity());
  Vec6 v;
  v << E(0, 0), E(1, 1), E(2, 2), 2.0 * E(0, 1), 2.0 * E(1, 2), 2.0 * E(0, 2);
  return v;
}

Mat3 symmetric_from(const Vec6& s) {
  Mat3 S;
  S << s[0], s[3], s[5], s[3], s[1], s[4], s[5], s[4], s[2];
  return S;
}

Pk1Tangent tangent_from(const Mat3& F, const Vec6& stress, const Mat6& D) {
  const Mat3 S = symmetric_from(stress);
  // CC_AJBL with minor symmetries, read from the Voigt matrix.
  auto cc = [&](int A, int J, int B, int L) { return D(voigt_index(A, J), voigt_index(B, L)); };
  Pk1Tangent t;
  for (int i = 0; i < 3; ++i)
    for (int J = 0; J < 3; ++J)
      for (int k = 0; k < 3; ++k)
        for (int L = 0; L < 3; ++L) {
          double v = i == k ? S(J, L) : 0.0;
          for (int A = 0; A < 3; ++A)
            for (int B = 0; B < 3; ++B) v += F(i, A) * cc(A, J, B, L) * F(k, B);
          t(i, J, k, L) = v;
        }
  return t;
}

struct PointState {
  Vec3 u = Vec3::Zero();
  Vec3 x;
  Mat3 F = Mat3::Identity();
};

PointState interpolate(const BasisEval& be, const VecX& state, const StrainPrescriptors& sp) {
  PointState ps;
  Vec3 du1 = Vec3::Zero(), du2 = Vec3::Zero();
  for (std::size_t k = 0; k < be.indices.size(); ++k) {
    const Vec3 uI = state.segment<3>(3 * be.indices[k]);
    ps.u += be.N[k] * uI;
    du1 += be.grad[k][0] * uI;
    du2 += be.grad[k][1] * uI;
  }
  ps.x = Vec3(be.X[0] + ps.u[0], be.X[1] + ps.u[1], ps.u[2]);
  ps.F.col(0) += du1;
  ps.F.col(1) += du2;
  ps.F.col(2) += sp.eps + sp.kappa.cross(ps.x);
  return ps;
}

MaterialResponse respond(const Material& material, const PointState& ps, const Vec2& X) {
  check_orientation(ps.F, X);
  try {
    return evaluate(material, strain_of(ps.F));
  } catch (const InvertedStateError& err) {
    throw InvertedStateError(err.what(), X[0], X[1]);
  }
}

ElementContribution pk1_element(const QuadElement& el, const Material& material, const StrainPrescriptors& sp,
                                const VecX& state, const Vec3& lambda, const Vec3& mu, bool with_tangent) {
  const std::size_t nen = el.indices.size();
  ElementContribution c = make_contribution(nen, with_tangent);
  const Mat3 K = skew(sp.kappa);
  const Mat3 I = Mat3::Identity();
  std::vector<std::array<Mat3, 3>> T(nen);
  for (const BasisEval& be : el.points) {
    const PointState ps = interpolate(be, state, sp);
    const MaterialResponse resp = respond(material, ps, be.X);
    const Mat3 P = ps.F * symmetric_from(resp.stress);
    const double dA = be.dA;
    for (std::size_t k = 0; k < nen; ++k)
      c.fu.segment<3>(3 * k) +=
          (be.grad[k][0] * P.col(0) + be.grad[k][1] * P.col(1) - be.N[k] * (K * P.col(2))) * dA;

    if (with_tangent) {
      const Pk1Tangent A = tangent_from(ps.F, resp.stress, resp.tangent);
      std::array<std::array<Mat3, 3>, 3> Aab;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) Aab[a][b](i, k) = A(i, a, k, b);
      // column a of dF_l is M_a(l) du_l with M = (N_,1 I, N_,2 I, N [kappa]_x)
      for (std::size_t l = 0; l < nen; ++l) {
        const std::array<Mat3, 3> M{be.grad[l][0] * I, be.grad[l][1] * I, be.N[l] * K};
        for (int a = 0; a < 3; ++a) T[l][a] = Aab[a][0] * M[0] + Aab[a][1] * M[1] + Aab[a][2] * M[2];
      }
      for (std::size_t k = 0; k < nen; ++k) {
        const std::array<Mat3, 3> Mt{be.grad[k][0] * I, be.grad[k][1] * I, -be.N[k] * K};
        for (std::size_t l = 0; l < nen; ++l)
          c.kuu.block<3, 3>(3 * k, 3 * l) += (Mt[0] * T[l][0] + Mt[1] * T[l][1] + Mt[2] * T[l][2]) * dA;
      }
    }
    add_constraint_terms(be, ps.x, lambda, mu, c, with_tangent);
  }
  return c;
}

System assemble(const Section& section, const Material& material, const StrainPrescriptors& sp, const VecX& state,
                int workers, bool with_tangent) {
  if (state.size() != section.num_dofs()) throw ParameterError("state vector has wrong dimension");
  const Vec3 lambda = state.segment<3>(section.lambda_offset());
  const Vec3 mu = state.segment<3>(section.mu_offset());
  const auto& elements = section.quadrature.elements;
  std::vector<ElementContribution> parts(elements.size());
  parallel_for(elements.size(), workers, [&](std::size_t e) {
    parts[e] = pk1_element(elements[e], material, sp, state, lambda, mu, with_tangent);
  });
  return reduce_contributions(section, parts, with_tangent);
}

}  // namespace

Mat3 pk1_stress(const Material& material, const Mat3& F) {
  if (!(F.determinant() > 0.0)) throw InvertedStateError("inverted state: det F <= 0");
  return F * symmetric_from(stress(material, strain_of(F)));
}

Pk1Tangent pk1_tangent(const Material& material, const Mat3& F) {
  if (!(F.determinant() > 0.0)) throw InvertedStateError("inverted state: det F <= 0");
  const MaterialResponse r = evaluate(material, strain_of(F));
  return tangent_from(F, r.stress, r.tangent);
}

System assemble_pk1(const Section& section, const Material& material, const StrainPrescriptors& sp,
                    const VecX& state, int workers) {
  return assemble(section, material, sp, state, workers, true);
}

VecX assemble_pk1_residual(const Section& section, const Material& material, const StrainPrescriptors& sp,
                           const VecX& state, int workers) {
  return assemble(section, material, sp, state, workers, false).residual;
}

VecX assemble_pk1_sensitivity_rhs(const Section& section, const Material& material, const StrainPrescriptors& sp,
                                  const VecX& state, int q, int workers) {
  if (q < 0 || q > 5) throw ParameterError("prescriptor index must be in 0..5");
  if (state.size() != section.num_dofs()) throw ParameterError("state vector has wrong dimension");
  StrainPrescriptors axis;
  axis[q] = 1.0;
  const Mat3 K = skew(sp.kappa);
  const Mat3 Kq = skew(axis.kappa);
  const auto& elements = section.quadrature.elements;
  std::vector<VecX> parts(elements.size());
  parallel_for(elements.size(), workers, [&](std::size_t e) {
    const QuadElement& el = elements[e];
    const std::size_t nen = el.indices.size();
    VecX f = VecX::Zero(static_cast<Eigen::Index>(3 * nen));
    for (const BasisEval& be : el.points) {
      const PointState ps = interpolate(be, state, sp);
      const MaterialResponse resp = respond(material, ps, be.X);
      const Mat3 P = ps.F * symmetric_from(resp.stress);
      Mat3 Fq = Mat3::Zero();
      Fq.col(2) = axis.eps + axis.kappa.cross(ps.x);
      const Mat3 dP = tangent_from(ps.F, resp.stress, resp.tangent).contract(Fq);
      for (std::size_t k = 0; k < nen; ++k)
        f.segment<3>(3 * k) += (be.grad[k][0] * dP.col(0) + be.grad[k][1] * dP.col(1) - be.N[k] * (K * dP.col(2)) -
                                be.N[k] * (Kq * P.col(2))) *
                               be.dA;
    }
    parts[e] = std::move(f);
  });
  VecX rhs = VecX::Zero(section.num_dofs());
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& idx = elements[e].indices;
    for (std::size_t k = 0; k < idx.size(); ++k) rhs.segment<3>(3 * idx[k]) += parts[e].segment<3>(3 * k);
  }
  return rhs;
}

}  // namespace cswp::pk1
