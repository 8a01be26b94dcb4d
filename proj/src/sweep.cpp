#include "sweep.hpp"

#include "errors.hpp"

namespace cswp {

StrainPrescriptors sweep_prescriptors(const SweepSpec& spec, double value) {
  if (spec.proportional) return spec.base.scaled(value);
  StrainPrescriptors sp = spec.base;
  sp[spec.axis] = value;
  return sp;
}

std::vector<SweepPoint> run_sweep(std::shared_ptr<const Section> section, const Material& material,
                                  const SweepSpec& spec, const SolveOptions& options) {
  if (spec.samples < 2) throw ParameterError("a sweep needs at least 2 samples");
  if (!spec.proportional && (spec.axis < 0 || spec.axis > 5)) throw ParameterError("sweep axis must be in 0..5");

  std::vector<SweepPoint> out;
  std::optional<WarmStart> warm;
  for (int i = 0; i < spec.samples; ++i) {
    SweepPoint pt;
    pt.value = spec.from + (spec.to - spec.from) * i / (spec.samples - 1);
    pt.sp = sweep_prescriptors(spec, pt.value);
    try {
      const Solution sol = newton_solve(section, material, pt.sp, options, warm);
      pt.converged = true;
      pt.iterations = sol.iterations;
      pt.load_steps = sol.load_steps;
      pt.resultants = stress_resultants(sol);
      pt.stiffness = beam_stiffness(sol, options.workers).matrix;
      pt.energy = beam_energy(sol);
      warm = WarmStart{sol.state, sol.sp};
      pt.solution = std::make_shared<const Solution>(sol);
    } catch (const Error& err) {
      pt.error = err.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace cswp
