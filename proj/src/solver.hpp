#pragma once

#include "assembly.hpp"
#include "linear_solver.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace cswp {

enum class Formulation { Pk2, Pk1 };

struct SolveOptions {
  /// Absolute tolerance on ||F_hat||_2 (GPa, mm units).
  double tolerance = 1e-10;
  int max_iterations = 20;
  int load_steps = 1;
  /// Cap for the step-doubling fallback after a failed load step.
  int max_load_steps = 64;
  bool record_history = true;
  Formulation formulation = Formulation::Pk2;
  int workers = 1;
};

struct Solution {
  std::shared_ptr<const Section> section;
  Material material;
  Formulation formulation = Formulation::Pk2;
  StrainPrescriptors sp;
  VecX state;
  /// ||F_hat||_2 at every iterate of every load step; entry 0 of each step is
  /// the residual of the warm start before any update.
  std::vector<std::vector<double>> step_histories;
  int load_steps = 1;
  /// Newton updates taken in the final load step.
  int iterations = 0;
  /// Tangent factorized at the converged state, shared by the adjoint solves.
  std::shared_ptr<const LinearSolver> factorization;

  /// Residual history of the last load step.
  const std::vector<double>& history() const { return step_histories.back(); }
  double final_residual() const { return history().back(); }
};

/// Residual and tangent of the selected formulation.
System assemble_formulation(Formulation f, const Section& section, const Material& material,
                            const StrainPrescriptors& sp, const VecX& state, int workers);

VecX assemble_formulation_residual(Formulation f, const Section& section, const Material& material,
                                   const StrainPrescriptors& sp, const VecX& state, int workers);

/// Converged state a solve may start from instead of the reference state.
struct WarmStart {
  VecX state;
  StrainPrescriptors sp;
};

/// Newton iteration on the saddle-point system. Load step j of s solves at
/// start + (j / s) * (target - start), warm-started from step j - 1. Without a
/// warm start the path begins at zero prescriptors and a zero state. A failed
/// step restarts the whole path with twice as many steps, up to
/// options.max_load_steps.
Solution newton_solve(std::shared_ptr<const Section> section, const Material& material,
                      const StrainPrescriptors& target, const SolveOptions& options = {},
                      const std::optional<WarmStart>& warm = std::nullopt);

}  // namespace cswp
