#include "cswp/cswp.h"

#include "beam_response.hpp"
#include "errors.hpp"
#include "sweep.hpp"
#include "validation.hpp"

#include <new>
#include <optional>

struct cswp_section {
  std::shared_ptr<const cswp::Section> impl;
};

struct cswp_solution {
  cswp::Solution impl;
  int workers = 1;
};

namespace {

thread_local std::string g_last_error;
thread_local std::vector<double> g_last_history;

cswp_status fail(cswp_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class Fn>
cswp_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CSWP_OK;
  } catch (const cswp::DivergenceError& e) {
    g_last_history = e.history();
    return fail(CSWP_ERR_DIVERGED, e.what());
  } catch (const cswp::InvertedStateError& e) {
    return fail(CSWP_ERR_INVERTED, e.what());
  } catch (const cswp::SingularPointError& e) {
    return fail(CSWP_ERR_SINGULAR_POINT, e.what());
  } catch (const cswp::FactorizationError& e) {
    return fail(CSWP_ERR_FACTORIZATION, e.what());
  } catch (const cswp::GeometryError& e) {
    return fail(CSWP_ERR_GEOMETRY, e.what());
  } catch (const cswp::ParameterError& e) {
    return fail(CSWP_ERR_PARAMETER, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CSWP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CSWP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CSWP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw cswp::ParameterError(what);
}

cswp::Material to_material(const cswp_material* m) {
  require(m != nullptr, "material is null");
  switch (m->kind) {
    case CSWP_SVK: return cswp::Material::svk(m->lambda, m->mu);
    case CSWP_NEO_HOOKE: return cswp::Material::neo_hooke(m->a10, m->bulk);
    case CSWP_MOONEY_RIVLIN: return cswp::Material::mooney_rivlin(m->b10, m->b01, m->bulk);
  }
  throw cswp::ParameterError("unknown material kind");
}

cswp::SolveOptions to_options(const cswp_solve_options* o) {
  cswp::SolveOptions opt;
  if (!o) return opt;
  require(o->formulation == CSWP_PK2 || o->formulation == CSWP_PK1, "unknown formulation");
  require(o->workers >= 1, "workers must be >= 1");
  require(o->max_load_steps >= 1, "max load steps must be >= 1");
  opt.tolerance = o->tolerance;
  opt.max_iterations = o->max_iterations;
  opt.load_steps = o->load_steps;
  opt.max_load_steps = o->max_load_steps;
  opt.record_history = o->record_history != 0;
  opt.formulation = o->formulation == CSWP_PK1 ? cswp::Formulation::Pk1 : cswp::Formulation::Pk2;
  opt.workers = o->workers;
  return opt;
}

cswp::StrainPrescriptors to_sp(const double* sp) {
  require(sp != nullptr, "prescriptors are null");
  std::array<double, 6> a;
  std::copy(sp, sp + 6, a.begin());
  return cswp::StrainPrescriptors::from_array(a);
}

size_t copy_out(const std::vector<double>& v, double* buf, size_t cap) {
  if (buf) std::copy_n(v.begin(), std::min(cap, v.size()), buf);
  return v.size();
}

cswp_status make_section(cswp::Patch patch, cswp_section** out) {
  auto* s = new cswp_section{std::make_shared<const cswp::Section>(std::move(patch))};
  *out = s;
  return CSWP_OK;
}

}  // namespace

extern "C" {

const char* cswp_version(void) { return "1.0.0"; }

const char* cswp_last_error(void) { return g_last_error.c_str(); }

size_t cswp_last_failure_history(double* buf, size_t cap) { return copy_out(g_last_history, buf, cap); }

void cswp_solve_options_default(cswp_solve_options* opts) {
  if (!opts) return;
  const cswp::SolveOptions d;
  opts->tolerance = d.tolerance;
  opts->max_iterations = d.max_iterations;
  opts->load_steps = d.load_steps;
  opts->max_load_steps = d.max_load_steps;
  opts->record_history = d.record_history ? 1 : 0;
  opts->formulation = CSWP_PK2;
  opts->workers = d.workers;
}

cswp_status cswp_material_reference(cswp_material_kind kind, cswp_material* out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    cswp::MaterialKind k;
    switch (kind) {
      case CSWP_SVK: k = cswp::MaterialKind::SaintVenantKirchhoff; break;
      case CSWP_NEO_HOOKE: k = cswp::MaterialKind::NeoHooke; break;
      case CSWP_MOONEY_RIVLIN: k = cswp::MaterialKind::MooneyRivlin; break;
      default: throw cswp::ParameterError("unknown material kind");
    }
    const cswp::Material m = cswp::Material::reference(k);
    *out = cswp_material{kind, m.lambda, m.mu, m.a10, m.b10, m.b01, m.bulk};
  });
}

cswp_status cswp_section_square(int degree, int elements, cswp_section** out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    make_section(cswp::unit_square_patch(degree, elements), out);
  });
}

cswp_status cswp_section_circle(int degree, int elements, cswp_section** out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    make_section(cswp::unit_circle_patch(degree, elements), out);
  });
}

cswp_status cswp_section_rectangle(double a, double b, int degree, int elements, cswp_section** out) {
  return guard([&] {
    require(out != nullptr, "output is null");
    make_section(cswp::rectangle_patch(a, b, degree, elements), out);
  });
}

void cswp_section_destroy(cswp_section* section) { delete section; }

int cswp_section_num_dofs(const cswp_section* section) { return section ? section->impl->num_dofs() : 0; }

double cswp_section_area(const cswp_section* section) {
  if (!section) return 0.0;
  double a = 0.0;
  for (const auto& el : section->impl->quadrature.elements)
    for (const auto& be : el.points) a += be.dA;
  return a;
}

cswp_status cswp_solve(const cswp_section* section, const cswp_material* material, const double sp[6],
                       const cswp_solve_options* opts, const cswp_solution* warm, cswp_solution** out) {
  return guard([&] {
    require(section != nullptr, "section is null");
    require(out != nullptr, "output is null");
    *out = nullptr;
    const cswp::SolveOptions opt = to_options(opts);
    std::optional<cswp::WarmStart> ws;
    if (warm) {
      require(warm->impl.section == section->impl, "warm start belongs to a different section");
      ws = cswp::WarmStart{warm->impl.state, warm->impl.sp};
    }
    auto* s = new cswp_solution{cswp::newton_solve(section->impl, to_material(material), to_sp(sp), opt, ws),
                                opt.workers};
    *out = s;
  });
}

void cswp_solution_destroy(cswp_solution* solution) { delete solution; }

int cswp_solution_iterations(const cswp_solution* solution) { return solution ? solution->impl.iterations : 0; }

int cswp_solution_load_steps(const cswp_solution* solution) { return solution ? solution->impl.load_steps : 0; }

size_t cswp_solution_history(const cswp_solution* solution, double* buf, size_t cap) {
  return solution ? copy_out(solution->impl.history(), buf, cap) : 0;
}

size_t cswp_solution_state(const cswp_solution* solution, double* buf, size_t cap) {
  if (!solution) return 0;
  const auto& s = solution->impl.state;
  return copy_out(std::vector<double>(s.data(), s.data() + s.size()), buf, cap);
}

cswp_status cswp_solution_resultants(const cswp_solution* solution, double out[6]) {
  return guard([&] {
    require(solution != nullptr && out != nullptr, "null argument");
    const cswp::Vec6 r = cswp::stress_resultants(solution->impl).stacked();
    std::copy(r.data(), r.data() + 6, out);
  });
}

cswp_status cswp_solution_energy(const cswp_solution* solution, double* out) {
  return guard([&] {
    require(solution != nullptr && out != nullptr, "null argument");
    *out = cswp::beam_energy(solution->impl);
  });
}

cswp_status cswp_solution_stiffness(const cswp_solution* solution, double out[36]) {
  return guard([&] {
    require(solution != nullptr && out != nullptr, "null argument");
    const cswp::Mat6 C = cswp::beam_stiffness(solution->impl, solution->workers).matrix;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) out[6 * p + q] = C(p, q);
  });
}

cswp_status cswp_solution_sample_fields(const cswp_solution* solution, int grid, cswp_field_sample* buf,
                                        size_t cap) {
  return guard([&] {
    require(solution != nullptr && buf != nullptr, "null argument");
    require(grid >= 1, "grid must be >= 1");
    require(cap >= static_cast<size_t>(grid) * static_cast<size_t>(grid), "buffer too small for grid");
    const auto samples = cswp::sample_fields(solution->impl, grid);
    for (size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      buf[i] = cswp_field_sample{s.xi, s.eta, s.X[0], s.X[1], s.u[0], s.u[1], s.u[2], s.von_mises, s.det_F};
    }
  });
}

cswp_status cswp_sweep(const cswp_section* section, const cswp_material* material, const cswp_sweep_spec* spec,
                       const cswp_solve_options* opts, cswp_sweep_callback callback, void* user) {
  return guard([&] {
    require(section != nullptr && spec != nullptr, "null argument");
    cswp::SweepSpec s;
    s.proportional = spec->proportional != 0;
    s.axis = spec->axis;
    s.base = to_sp(spec->base);
    s.from = spec->from;
    s.to = spec->to;
    s.samples = spec->samples;
    const auto points = cswp::run_sweep(section->impl, to_material(material), s, to_options(opts));
    if (!callback) return;
    for (size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      cswp_sweep_point c{};
      c.index = static_cast<int>(i);
      c.value = p.value;
      const auto a = p.sp.to_array();
      std::copy(a.begin(), a.end(), c.sp);
      c.converged = p.converged ? 1 : 0;
      c.error = p.error.c_str();
      c.iterations = p.iterations;
      c.load_steps = p.load_steps;
      const cswp::Vec6 r = p.resultants.stacked();
      std::copy(r.data(), r.data() + 6, c.resultants);
      for (int row = 0; row < 6; ++row)
        for (int col = 0; col < 6; ++col) c.stiffness[6 * row + col] = p.stiffness(row, col);
      c.energy = p.energy;
      callback(&c, user);
    }
  });
}

cswp_status cswp_validate(cswp_criterion_callback callback, void* user, int* all_passed,
                          double* assembly_time_ratio) {
  return guard([&] {
    const cswp::ValidationReport report = cswp::run_validation([&](const cswp::CriterionResult& r) {
      if (!callback) return;
      const cswp_criterion c{r.id, r.title.c_str(), r.passed ? 1 : 0, r.seconds, r.time_limit, r.detail.c_str()};
      callback(&c, user);
    });
    if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
    if (assembly_time_ratio) *assembly_time_ratio = report.assembly_time_ratio;
  });
}

}  // extern "C"
