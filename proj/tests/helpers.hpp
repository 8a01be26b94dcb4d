#pragma once

#include "assembly.hpp"
#include "material.hpp"
#include "solver.hpp"
#include "types.hpp"

#include <memory>
#include <random>

namespace testing {

inline double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-14);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline cswp::StrainPrescriptors multiaxial_state() {
  cswp::StrainPrescriptors sp;
  sp.eps << 0.02, 0.03, 0.1;
  sp.kappa << 0.01, 0.02, 0.02;
  return sp;
}

inline cswp::StrainPrescriptors make_sp(double e1, double e2, double e3, double k1, double k2, double k3) {
  return cswp::StrainPrescriptors::from_array({e1, e2, e3, k1, k2, k3});
}

inline std::shared_ptr<const cswp::Section> square(int p = 3, int n = 5) {
  return std::make_shared<const cswp::Section>(cswp::unit_square_patch(p, n));
}

inline std::shared_ptr<const cswp::Section> circle(int p = 3, int n = 5) {
  return std::make_shared<const cswp::Section>(cswp::unit_circle_patch(p, n));
}

inline cswp::Material svk() { return cswp::Material::reference(cswp::MaterialKind::SaintVenantKirchhoff); }
inline cswp::Material neo() { return cswp::Material::reference(cswp::MaterialKind::NeoHooke); }
inline cswp::Material mooney() { return cswp::Material::reference(cswp::MaterialKind::MooneyRivlin); }

inline std::vector<cswp::Material> all_materials() { return {svk(), neo(), mooney()}; }

// Random Voigt strain with entries in [-r, r].
inline cswp::Vec6 random_strain(std::mt19937& g, double r) {
  std::uniform_real_distribution<double> d(-r, r);
  cswp::Vec6 e;
  for (int i = 0; i < 6; ++i) e[i] = d(g);
  return e;
}

inline cswp::Mat3 random_F(std::mt19937& g, double r) {
  std::uniform_real_distribution<double> d(-r, r);
  cswp::Mat3 F = cswp::Mat3::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) F(i, j) += d(g);
  return F;
}

// Small random displacement state with zero multipliers.
inline cswp::VecX random_state(const cswp::Section& s, std::mt19937& g, double r) {
  std::uniform_real_distribution<double> d(-r, r);
  cswp::VecX x = cswp::VecX::Zero(s.num_dofs());
  for (int i = 0; i < s.num_dofs(); ++i) x[i] = d(g);
  return x;
}

}  // namespace testing
