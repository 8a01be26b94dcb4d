#pragma once

#include "solver.hpp"

#include <array>
#include <vector>

namespace cswp {

/// Section force n = int P e3 dA (N when GPa and mm^2 are scaled) and moment
/// m = int x cross P e3 dA.
struct Resultants {
  Vec3 n = Vec3::Zero();
  Vec3 m = Vec3::Zero();

  Vec6 stacked() const {
    Vec6 s;
    s << n, m;
    return s;
  }
};

Resultants stress_resultants(const Solution& sol);

/// Psi_b = int psi dA: energy per unit beam length.
double beam_energy(const Solution& sol);

struct BeamStiffness {
  /// C_pq = d(n, m)_p / d(eps, kappa)_q.
  Mat6 matrix = Mat6::Zero();
  /// Column q: d(state)/dq from the adjoint solves.
  std::array<VecX, 6> sensitivities;
};

/// Six solves with the factorization stored in `sol`; the right-hand sides
/// come from the formulation the solution was computed with.
BeamStiffness beam_stiffness(const Solution& sol, int workers = 1);

struct FieldSample {
  double xi = 0.0;
  double eta = 0.0;
  Vec2 X = Vec2::Zero();
  Vec3 u = Vec3::Zero();
  double von_mises = 0.0;
  double det_F = 0.0;
};

/// Cell-centred grid of grid x grid parametric points, xi fastest.
std::vector<FieldSample> sample_fields(const Solution& sol, int grid);

}  // namespace cswp
