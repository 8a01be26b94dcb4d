#include "solver.hpp"

#include "errors.hpp"
#include "pk1_oracle.hpp"

#include <cmath>
#include <sstream>

namespace cswp {

System assemble_formulation(Formulation f, const Section& section, const Material& material,
                            const StrainPrescriptors& sp, const VecX& state, int workers) {
  return f == Formulation::Pk2 ? assemble_system(section, material, sp, state, workers)
                               : pk1::assemble_pk1(section, material, sp, state, workers);
}

VecX assemble_formulation_residual(Formulation f, const Section& section, const Material& material,
                                   const StrainPrescriptors& sp, const VecX& state, int workers) {
  return f == Formulation::Pk2 ? assemble_residual(section, material, sp, state, workers)
                               : pk1::assemble_pk1_residual(section, material, sp, state, workers);
}

namespace {

StrainPrescriptors interpolate(const StrainPrescriptors& a, const StrainPrescriptors& b, double t) {
  StrainPrescriptors sp;
  sp.eps = a.eps + t * (b.eps - a.eps);
  sp.kappa = a.kappa + t * (b.kappa - a.kappa);
  return sp;
}

struct StepResult {
  std::vector<double> history;
  int iterations = 0;
  std::shared_ptr<const LinearSolver> factorization;
};

StepResult newton_step(const Section& section, const Material& material, const StrainPrescriptors& sp,
                       const SolveOptions& opt, VecX& state) {
  StepResult out;
  for (int k = 0;; ++k) {
    System sys = assemble_formulation(opt.formulation, section, material, sp, state, opt.workers);
    const double r = sys.residual.norm();
    out.history.push_back(r);
    if (!std::isfinite(r)) throw DivergenceError("residual is not finite", out.history);
    if (r <= opt.tolerance) {
      out.iterations = k;
      out.factorization = std::make_shared<const LinearSolver>(std::move(sys.tangent));
      return out;
    }
    if (k == opt.max_iterations) {
      std::ostringstream os;
      os << "Newton did not converge in " << opt.max_iterations << " iterations (residual " << r << ")";
      throw DivergenceError(os.str(), out.history);
    }
    const LinearSolver lin(std::move(sys.tangent));
    state += lin.solve(-sys.residual);
  }
}

}  // namespace

Solution newton_solve(std::shared_ptr<const Section> section, const Material& material,
                      const StrainPrescriptors& target, const SolveOptions& options,
                      const std::optional<WarmStart>& warm) {
  if (!section) throw ParameterError("section is null");
  if (!(options.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  if (options.load_steps < 1) throw ParameterError("load steps must be >= 1");
  if (options.max_iterations < 1) throw ParameterError("max iterations must be >= 1");

  const StrainPrescriptors start = warm ? warm->sp : StrainPrescriptors{};
  VecX initial = warm ? warm->state : VecX::Zero(section->num_dofs());
  if (initial.size() != section->num_dofs()) throw ParameterError("warm-start state has wrong dimension");

  int steps = options.load_steps;
  for (;;) {
    Solution sol;
    sol.section = section;
    sol.material = material;
    sol.formulation = options.formulation;
    sol.sp = target;
    sol.load_steps = steps;
    sol.state = initial;
    try {
      for (int j = 1; j <= steps; ++j) {
        const StrainPrescriptors sp = j == steps ? target : interpolate(start, target, static_cast<double>(j) / steps);
        StepResult step = newton_step(*section, material, sp, options, sol.state);
        if (options.record_history || j == steps) sol.step_histories.push_back(std::move(step.history));
        sol.iterations = step.iterations;
        sol.factorization = std::move(step.factorization);
      }
      return sol;
    } catch (const InvertedStateError&) {
      if (steps * 2 > options.max_load_steps) throw;
    } catch (const DivergenceError&) {
      if (steps * 2 > options.max_load_steps) throw;
    } catch (const FactorizationError&) {
      if (steps * 2 > options.max_load_steps) throw;
    }
    steps *= 2;
  }
}

}  // namespace cswp
