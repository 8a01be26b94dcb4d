#pragma once

#include "beam_response.hpp"

#include <string>
#include <vector>

namespace cswp {

/// Single-axis mode varies prescriptor `axis` from `from` to `to` on top of
/// `base`. Proportional mode scales all of `base` by theta in [from, to].
struct SweepSpec {
  bool proportional = false;
  int axis = 5;
  StrainPrescriptors base;
  double from = 0.0;
  double to = 1.0;
  int samples = 11;
};

struct SweepPoint {
  double value = 0.0;
  StrainPrescriptors sp;
  bool converged = false;
  std::string error;
  int iterations = 0;
  int load_steps = 0;
  Resultants resultants;
  Mat6 stiffness = Mat6::Zero();
  double energy = 0.0;
  std::shared_ptr<const Solution> solution;
};

StrainPrescriptors sweep_prescriptors(const SweepSpec& spec, double value);

/// Samples are solved in order, each warm-started from the last converged
/// one. A failed sample is recorded and the sweep continues.
std::vector<SweepPoint> run_sweep(std::shared_ptr<const Section> section, const Material& material,
                                  const SweepSpec& spec, const SolveOptions& options = {});

}  // namespace cswp
