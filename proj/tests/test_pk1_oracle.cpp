#include "doctest.h"
#include "errors.hpp"
#include "helpers.hpp"
#include "kinematics.hpp"
#include "pk1_oracle.hpp"

using namespace cswp;
using testing::rel_err;

namespace {

double psi_of_F(const Material& m, const Mat3& F) { return energy(m, green_lagrange(F)); }

double major_asymmetry(const pk1::Pk1Tangent& A) {
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int J = 0; J < 3; ++J)
      for (int k = 0; k < 3; ++k)
        for (int L = 0; L < 3; ++L) {
          worst = std::max(worst, std::abs(A(i, J, k, L) - A(k, L, i, J)));
          scale = std::max(scale, std::abs(A(i, J, k, L)));
        }
  return worst / scale;
}

}  // namespace

TEST_SUITE("pk1_oracle") {
  TEST_CASE("hand values") {
    const Material m = testing::svk();
    CHECK(pk1::pk1_stress(m, Mat3::Identity()).norm() == 0.0);
    Mat3 F = Mat3::Identity();
    F(2, 2) = 1.1;
    const Mat3 P = pk1::pk1_stress(m, F);
    CHECK(P(2, 2) == doctest::Approx(1.1 * 281.0 * 0.105).epsilon(1e-12));
    CHECK(P(0, 0) == doctest::Approx(12.705).epsilon(1e-12));
    CHECK(P(1, 1) == doctest::Approx(12.705).epsilon(1e-12));
  }

  TEST_CASE("reference tangent is the isotropic elasticity tensor") {
    const Material m = testing::svk();
    const pk1::Pk1Tangent A = pk1::pk1_tangent(m, Mat3::Identity());
    for (int i = 0; i < 3; ++i)
      for (int J = 0; J < 3; ++J)
        for (int k = 0; k < 3; ++k)
          for (int L = 0; L < 3; ++L) {
            const double want = m.lambda * (i == J) * (k == L) + m.mu * ((i == k) * (J == L) + (i == L) * (J == k));
            CHECK(A(i, J, k, L) == doctest::Approx(want).epsilon(1e-12));
          }
  }

  TEST_CASE("stress and tangent match finite differences") {
    std::mt19937 g(13);
    const double h = 1e-6;
    for (const auto& m : testing::all_materials()) {
      for (int trial = 0; trial < 30; ++trial) {
        const Mat3 F = testing::random_F(g, 0.15);
        Mat3 Pfd;
        pk1::Pk1Tangent Afd;
        for (int k = 0; k < 3; ++k)
          for (int L = 0; L < 3; ++L) {
            Mat3 d = Mat3::Zero();
            d(k, L) = h;
            Pfd(k, L) = (psi_of_F(m, F + d) - psi_of_F(m, F - d)) / (2 * h);
            const Mat3 dP = (pk1::pk1_stress(m, F + d) - pk1::pk1_stress(m, F - d)) / (2 * h);
            for (int i = 0; i < 3; ++i)
              for (int J = 0; J < 3; ++J) Afd(i, J, k, L) = dP(i, J);
          }
        CHECK(rel_err(pk1::pk1_stress(m, F), Pfd) < 1e-6);
        const pk1::Pk1Tangent A = pk1::pk1_tangent(m, F);
        const Eigen::Map<const Eigen::Matrix<double, 81, 1>> a(A.a.data()), afd(Afd.a.data());
        CHECK(rel_err(a, afd) < 1e-5);
        CHECK(major_asymmetry(A) < 1e-10);

        const Mat3 dF = testing::random_F(g, 0.3) - Mat3::Identity();
        const Mat3 S = voigt_to_stress(stress(m, green_lagrange(F)));
        const Mat3 sym = 0.5 * (F.transpose() * dF + dF.transpose() * F);
        const Mat3 pk2_side = dF * S + F * voigt_to_stress(tangent(m, green_lagrange(F)) * strain_to_voigt(sym));
        CHECK(rel_err(A.contract(dF), pk2_side) < 1e-10);
      }
    }
  }

  TEST_CASE("inverted deformation is rejected") {
    Mat3 F = Mat3::Identity();
    F(0, 0) = -1.0;
    CHECK_THROWS_AS(pk1::pk1_stress(testing::svk(), F), InvertedStateError);
    CHECK_THROWS_AS(pk1::pk1_tangent(testing::neo(), F), InvertedStateError);
  }

  TEST_CASE("reference state residual") {
    const auto sec = testing::square();
    CHECK(pk1::assemble_pk1_residual(*sec, testing::svk(), {}, VecX::Zero(sec->num_dofs())).cwiseAbs().maxCoeff() <
          1e-14);
  }

  TEST_CASE("PK1 and PK2 assemblies agree") {
    std::mt19937 g(31);
    std::uniform_real_distribution<double> d(-0.1, 0.1);
    const std::array<std::shared_ptr<const Section>, 2> secs{testing::square(), testing::circle()};
    for (int k = 0; k < 20; ++k) {
      const Section& sec = *secs[k % 2];
      const Material m = testing::all_materials()[k % 3];
      const StrainPrescriptors sp = testing::make_sp(d(g), d(g), d(g), d(g), d(g), d(g));
      VecX state = testing::random_state(sec, g, 0.002);
      const System a = assemble_system(sec, m, sp, state);
      const System b = pk1::assemble_pk1(sec, m, sp, state);
      CHECK(rel_err(b.residual, a.residual) < 1e-12);
      CHECK(rel_err(Eigen::MatrixXd(b.tangent), Eigen::MatrixXd(a.tangent)) < 1e-12);
      CHECK(rel_err(pk1::assemble_pk1_residual(sec, m, sp, state), a.residual) < 1e-12);
      for (int q : {k % 6, (k + 3) % 6})
        CHECK(rel_err(pk1::assemble_pk1_sensitivity_rhs(sec, m, sp, state, q),
                      assemble_sensitivity_rhs(sec, m, sp, state, q)) < 1e-12);
    }
  }
}
