#include "assembly.hpp"

#include "constraints.hpp"
#include "errors.hpp"
#include "kinematics.hpp"
#include "parallel.hpp"

#include <sstream>

namespace cswp {

double Section::radius() const {
  double r = 0.0;
  for (const auto& p : patch.points) r = std::max(r, p.norm());
  return r;
}

ElementContribution make_contribution(std::size_t nen, bool with_tangent) {
  ElementContribution c;
  const auto m = static_cast<Eigen::Index>(3 * nen);
  c.fu = VecX::Zero(m);
  if (with_tangent) {
    c.kuu = Eigen::MatrixXd::Zero(m, m);
    c.kul = Eigen::MatrixXd::Zero(m, 3);
    c.kum = Eigen::MatrixXd::Zero(m, 3);
  }
  return c;
}

void check_orientation(const Mat3& F, const Vec2& X) {
  if (!(F.determinant() > 0.0)) {
    std::ostringstream os;
    os << "inverted element: det F <= 0 at X = (" << X[0] << ", " << X[1] << ")";
    throw InvertedStateError(os.str(), X[0], X[1]);
  }
}

void add_constraint_terms(const BasisEval& basis, const Vec3& x, const Vec3& lambda, const Vec3& mu,
                          ElementContribution& out, bool with_tangent) {
  const double dA = basis.dA;
  const Mat3 M = constraint_jacobian(x);
  const Vec3 force = lambda + M * mu;
  const std::size_t nen = basis.indices.size();
  for (std::size_t k = 0; k < nen; ++k) out.fu.segment<3>(3 * k) += basis.N[k] * dA * force;
  out.f_lambda += x * dA;
  out.f_mu += rotation_constraint(basis.X, x) * dA;
  if (!with_tangent) return;
  const Mat3 Xi = constraint_hessian(x, mu);
  for (std::size_t k = 0; k < nen; ++k) {
    out.kul.block<3, 3>(3 * k, 0) += basis.N[k] * dA * Mat3::Identity();
    out.kum.block<3, 3>(3 * k, 0) += basis.N[k] * dA * M;
    for (std::size_t l = 0; l < nen; ++l) out.kuu.block<3, 3>(3 * k, 3 * l) += basis.N[k] * basis.N[l] * dA * Xi;
  }
}

System reduce_contributions(const Section& section, const std::vector<ElementContribution>& parts, bool with_tangent) {
  const int ndof = section.num_dofs();
  const int lo = section.lambda_offset();
  const int mo = section.mu_offset();
  System sys;
  sys.residual = VecX::Zero(ndof);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t e = 0; e < parts.size(); ++e) {
    const auto& idx = section.quadrature.elements[e].indices;
    const auto& c = parts[e];
    for (std::size_t k = 0; k < idx.size(); ++k) sys.residual.segment<3>(3 * idx[k]) += c.fu.segment<3>(3 * k);
    sys.residual.segment<3>(lo) += c.f_lambda;
    sys.residual.segment<3>(mo) += c.f_mu;
    if (!with_tangent) continue;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (std::size_t l = 0; l < idx.size(); ++l)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) trip.emplace_back(3 * idx[k] + a, 3 * idx[l] + b, c.kuu(3 * k + a, 3 * l + b));
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const int row = 3 * idx[k] + a;
          trip.emplace_back(row, lo + b, c.kul(3 * k + a, b));
          trip.emplace_back(lo + b, row, c.kul(3 * k + a, b));
          trip.emplace_back(row, mo + b, c.kum(3 * k + a, b));
          trip.emplace_back(mo + b, row, c.kum(3 * k + a, b));
        }
      }
    }
  }
  if (with_tangent) {
    sys.tangent.resize(ndof, ndof);
    sys.tangent.setFromTriplets(trip.begin(), trip.end());
    sys.tangent.makeCompressed();
  }
  return sys;
}

namespace {

struct CachedState {
  Vec3 lambda;
  Vec3 mu;
};

CachedState multipliers(const Section& section, const VecX& state) {
  if (state.size() != section.num_dofs()) throw ParameterError("state vector has wrong dimension");
  return {state.segment<3>(section.lambda_offset()), state.segment<3>(section.mu_offset())};
}

ElementContribution pk2_element(const QuadElement& el, const Material& material, const StrainPrescriptors& sp,
                                const VecX& state, const CachedState& mult, bool with_tangent) {
  const std::size_t nen = el.indices.size();
  ElementContribution c = make_contribution(nen, with_tangent);
  std::vector<Mat63> B(nen);
  for (const BasisEval& be : el.points) {
    const PointKinematics pk = point_kinematics(be, state, sp);
    check_orientation(pk.F, be.X);
    MaterialResponse resp;
    try {
      resp = evaluate(material, pk.strain);
    } catch (const InvertedStateError& err) {
      throw InvertedStateError(err.what(), be.X[0], be.X[1]);
    }
    const double dA = be.dA;
    for (std::size_t k = 0; k < nen; ++k) {
      B[k] = b_operator(pk.F, sp.kappa, be.N[k], be.grad[k]);
      c.fu.segment<3>(3 * k) += B[k].transpose() * resp.stress * dA;
    }
    if (with_tangent) {
      for (std::size_t k = 0; k < nen; ++k) {
        const Eigen::Matrix<double, 3, 6> BtD = B[k].transpose() * resp.tangent * dA;
        for (std::size_t l = k; l < nen; ++l) {
          const Mat3 blk = BtD * B[l] +
                           geometric_operator(sp.kappa, be.N[k], be.N[l], be.grad[k], be.grad[l], resp.stress) * dA;
          c.kuu.block<3, 3>(3 * k, 3 * l) += blk;
          if (l != k) c.kuu.block<3, 3>(3 * l, 3 * k) += blk.transpose();
        }
      }
    }
    add_constraint_terms(be, pk.x, mult.lambda, mult.mu, c, with_tangent);
  }
  return c;
}

System assemble_pk2(const Section& section, const Material& material, const StrainPrescriptors& sp, const VecX& state,
                    int workers, bool with_tangent) {
  const CachedState mult = multipliers(section, state);
  const auto& elements = section.quadrature.elements;
  std::vector<ElementContribution> parts(elements.size());
  parallel_for(elements.size(), workers, [&](std::size_t e) {
    parts[e] = pk2_element(elements[e], material, sp, state, mult, with_tangent);
  });
  return reduce_contributions(section, parts, with_tangent);
}

}  // namespace

VecX assemble_residual(const Section& section, const Material& material, const StrainPrescriptors& sp,
                       const VecX& state, int workers) {
  return assemble_pk2(section, material, sp, state, workers, false).residual;
}

SparseMatrix assemble_tangent(const Section& section, const Material& material, const StrainPrescriptors& sp,
                              const VecX& state, int workers) {
  return assemble_pk2(section, material, sp, state, workers, true).tangent;
}

System assemble_system(const Section& section, const Material& material, const StrainPrescriptors& sp,
                       const VecX& state, int workers) {
  return assemble_pk2(section, material, sp, state, workers, true);
}

VecX assemble_sensitivity_rhs(const Section& section, const Material& material, const StrainPrescriptors& sp,
                              const VecX& state, int q, int workers) {
  if (q < 0 || q > 5) throw ParameterError("prescriptor index must be in 0..5");
  multipliers(section, state);
  const auto& elements = section.quadrature.elements;
  std::vector<VecX> parts(elements.size());
  parallel_for(elements.size(), workers, [&](std::size_t e) {
    const QuadElement& el = elements[e];
    const std::size_t nen = el.indices.size();
    VecX f = VecX::Zero(static_cast<Eigen::Index>(3 * nen));
    for (const BasisEval& be : el.points) {
      const PointKinematics pk = point_kinematics(be, state, sp);
      check_orientation(pk.F, be.X);
      const MaterialResponse resp = evaluate(material, pk.strain);
      // 2 dS/dC applied to E_,q equals D E_,q because C = 2E + I.
      const Vec6 dS = resp.tangent * strain_sensitivity(pk.F, pk.x, q);
      for (std::size_t k = 0; k < nen; ++k) {
        const Mat63 B = b_operator(pk.F, sp.kappa, be.N[k], be.grad[k]);
        const Mat63 Bq = b_operator_sensitivity(pk.F, pk.x, sp.kappa, q, be.N[k], be.grad[k]);
        f.segment<3>(3 * k) += (B.transpose() * dS + Bq.transpose() * resp.stress) * be.dA;
      }
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

}  // namespace cswp
