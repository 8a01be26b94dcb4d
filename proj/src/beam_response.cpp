#include "beam_response.hpp"

#include "errors.hpp"
#include "kinematics.hpp"
#include "pk1_oracle.hpp"

#include <cmath>
#include <optional>

namespace cswp {

namespace {

void require_converged(const Solution& sol) {
  if (!sol.section) throw ParameterError("solution has no section");
  if (sol.state.size() != sol.section->num_dofs()) throw ParameterError("solution state has wrong dimension");
}

}  // namespace

Resultants stress_resultants(const Solution& sol) {
  require_converged(sol);
  Resultants r;
  for (const auto& el : sol.section->quadrature.elements)
    for (const BasisEval& be : el.points) {
      const PointKinematics pk = point_kinematics(be, sol.state, sol.sp);
      const Vec3 t = pk.F * voigt_to_stress(stress(sol.material, pk.strain)).col(2);
      r.n += t * be.dA;
      r.m += pk.x.cross(t) * be.dA;
    }
  return r;
}

double beam_energy(const Solution& sol) {
  require_converged(sol);
  double psi = 0.0;
  for (const auto& el : sol.section->quadrature.elements)
    for (const BasisEval& be : el.points) {
      const PointKinematics pk = point_kinematics(be, sol.state, sol.sp);
      psi += energy(sol.material, pk.strain) * be.dA;
    }
  return psi;
}

BeamStiffness beam_stiffness(const Solution& sol, int workers) {
  require_converged(sol);
  if (!sol.factorization) throw FactorizationError("solution carries no factorization");
  const Section& section = *sol.section;

  BeamStiffness out;
  for (int q = 0; q < 6; ++q) {
    const VecX rhs = sol.formulation == Formulation::Pk2
                         ? assemble_sensitivity_rhs(section, sol.material, sol.sp, sol.state, q, workers)
                         : pk1::assemble_pk1_sensitivity_rhs(section, sol.material, sol.sp, sol.state, q, workers);
    out.sensitivities[q] = sol.factorization->solve(-rhs);
  }

  for (const auto& el : section.quadrature.elements)
    for (const BasisEval& be : el.points) {
      const PointKinematics pk = point_kinematics(be, sol.state, sol.sp);
      const MaterialResponse resp = evaluate(sol.material, pk.strain);
      const Mat3 S = voigt_to_stress(resp.stress);
      const Vec3 t = pk.F * S.col(2);
      std::array<Vec3, 6> w;
      for (int p = 0; p < 6; ++p) w[p] = prescriptor_direction(pk.x, p);
      std::optional<pk1::Pk1Tangent> A;
      if (sol.formulation == Formulation::Pk1) A = pk1::pk1_tangent(sol.material, pk.F);

      for (int q = 0; q < 6; ++q) {
        Vec3 uq = Vec3::Zero();
        Mat32 guq = Mat32::Zero();
        for (std::size_t k = 0; k < be.indices.size(); ++k) {
          const Vec3 d = out.sensitivities[q].segment<3>(3 * be.indices[k]);
          uq += be.N[k] * d;
          guq.col(0) += be.grad[k][0] * d;
          guq.col(1) += be.grad[k][1] * d;
        }
        const Mat3 Fq = total_deformation_gradient_sensitivity(pk.x, uq, guq, sol.sp.kappa, q);
        Mat3 dP;
        if (A) {
          dP = A->contract(Fq);
        } else {
          const Vec6 dE = strain_to_voigt(0.5 * (pk.F.transpose() * Fq + Fq.transpose() * pk.F));
          dP = Fq * S + pk.F * voigt_to_stress(resp.tangent * dE);
        }
        const Vec3 dt = dP.col(2);
        for (int p = 0; p < 6; ++p) {
          const Vec3 kp = prescriptor_axis(p).kappa;
          out.matrix(p, q) += (dt.dot(w[p]) + t.dot(kp.cross(uq))) * be.dA;
        }
      }
    }
  return out;
}

std::vector<FieldSample> sample_fields(const Solution& sol, int grid) {
  require_converged(sol);
  if (grid < 1) throw ParameterError("grid must be >= 1");
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(grid) * grid);
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) {
      FieldSample s;
      s.xi = (i + 0.5) / grid;
      s.eta = (j + 0.5) / grid;
      const BasisEval be = eval_basis(sol.section->patch, s.xi, s.eta);
      const PointKinematics pk = point_kinematics(be, sol.state, sol.sp);
      s.X = be.X;
      s.u = pk.u;
      s.det_F = pk.F.determinant();
      if (s.det_F > 0.0) {
        const Mat3 sigma = pk.F * voigt_to_stress(stress(sol.material, pk.strain)) * pk.F.transpose() / s.det_F;
        const Mat3 dev = sigma - sigma.trace() / 3.0 * Mat3::Identity();
        s.von_mises = std::sqrt(1.5 * (dev.array() * dev.array()).sum());
      } else {
        s.von_mises = std::nan("");
      }
      out.push_back(s);
    }
  return out;
}

}  // namespace cswp
