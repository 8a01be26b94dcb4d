#include "cswp/cswp.h"
#include "run_config.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using cswp_cli::ConfigError;
using cswp_cli::RunConfig;

namespace {

enum Exit { kOk = 0, kUsage = 1, kSolveFailed = 2, kValidationFailed = 3 };

struct SolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kSpNames[6] = {"eps1", "eps2", "eps3", "kappa1", "kappa2", "kappa3"};
const char* kSpUnits[6] = {"", "", "", "_per_mm", "_per_mm", "_per_mm"};
const char* kResNames[6] = {"n1_kN", "n2_kN", "n3_kN", "m1_kNmm", "m2_kNmm", "m3_kNmm"};

const char* stiffness_unit(int p, int q) {
  const int k = (p >= 3) + (q >= 3);
  return k == 0 ? "kN" : k == 1 ? "kN*mm" : "kN*mm^2";
}

struct Section {
  cswp_section* h = nullptr;
  ~Section() { cswp_section_destroy(h); }
};

struct Solution {
  cswp_solution* h = nullptr;
  ~Solution() { cswp_solution_destroy(h); }
};

struct File {
  std::FILE* f = nullptr;
  explicit File(const fs::path& p) : f(std::fopen(p.string().c_str(), "w")) {
    if (!f) throw ConfigError("cannot write " + p.string());
  }
  ~File() {
    if (f) std::fclose(f);
  }
};

void check(cswp_status st) {
  if (st == CSWP_OK) return;
  const std::string msg = cswp_last_error();
  if (st == CSWP_ERR_PARAMETER || st == CSWP_ERR_GEOMETRY) throw ConfigError(msg);
  throw SolveFailure(msg);
}

void make_section(const RunConfig& c, Section& s) {
  if (c.section.kind == "square") {
    check(cswp_section_square(c.degree, c.elements, &s.h));
  } else if (c.section.kind == "circle") {
    check(cswp_section_circle(c.degree, c.elements, &s.h));
  } else {
    check(cswp_section_rectangle(c.section.a, c.section.b, c.degree, c.elements, &s.h));
  }
}

cswp_material to_material(const RunConfig& c) {
  const auto& m = c.material;
  cswp_material out{};
  out.kind = m.kind == "svk" ? CSWP_SVK : m.kind == "neohooke" ? CSWP_NEO_HOOKE : CSWP_MOONEY_RIVLIN;
  out.lambda = m.lambda;
  out.mu = m.mu;
  out.a10 = m.a10;
  out.b10 = m.b10;
  out.b01 = m.b01;
  out.bulk = m.bulk;
  return out;
}

cswp_solve_options to_options(const RunConfig& c) {
  cswp_solve_options o;
  cswp_solve_options_default(&o);
  o.tolerance = c.tolerance;
  o.max_iterations = c.max_iterations;
  o.load_steps = c.steps;
  if (o.max_load_steps < c.steps) o.max_load_steps = c.steps;
  o.formulation = c.formulation == "pk1" ? CSWP_PK1 : CSWP_PK2;
  o.workers = c.workers;
  return o;
}

void prescriptors(const RunConfig& c, double sp[6]) {
  for (int i = 0; i < 3; ++i) {
    sp[i] = c.eps[i];
    sp[3 + i] = c.kappa[i];
  }
}

void write_history(const fs::path& dir, const std::vector<double>& h) {
  File f(dir / "residuals.csv");
  std::fprintf(f.f, "iteration,residual_norm\n");
  for (size_t i = 0; i < h.size(); ++i) std::fprintf(f.f, "%zu,%.17g\n", i, h[i]);
}

std::vector<double> history_of(const cswp_solution* s) {
  std::vector<double> h(cswp_solution_history(s, nullptr, 0));
  cswp_solution_history(s, h.data(), h.size());
  return h;
}

std::vector<double> failure_history() {
  std::vector<double> h(cswp_last_failure_history(nullptr, 0));
  cswp_last_failure_history(h.data(), h.size());
  return h;
}

void write_resultants(const fs::path& dir, const double r[6]) {
  File f(dir / "resultants.csv");
  for (int i = 0; i < 6; ++i) std::fprintf(f.f, "%s%s", i ? "," : "", kResNames[i]);
  std::fprintf(f.f, "\n");
  for (int i = 0; i < 6; ++i) std::fprintf(f.f, "%s%.17g", i ? "," : "", r[i]);
  std::fprintf(f.f, "\n");
}

void write_stiffness(const fs::path& dir, const double C[36]) {
  File f(dir / "stiffness.csv");
  std::fprintf(f.f, "p\\q [kN eps-eps; kN*mm eps-kappa; kN*mm^2 kappa-kappa]");
  for (int q = 0; q < 6; ++q) std::fprintf(f.f, ",%s", kSpNames[q]);
  std::fprintf(f.f, "\n");
  for (int p = 0; p < 6; ++p) {
    std::fprintf(f.f, "%s", kSpNames[p]);
    for (int q = 0; q < 6; ++q) std::fprintf(f.f, ",%.17g", C[6 * p + q]);
    std::fprintf(f.f, "\n");
  }
}

void write_fields(const fs::path& dir, const cswp_solution* s, int grid) {
  std::vector<cswp_field_sample> buf(static_cast<size_t>(grid) * grid);
  check(cswp_solution_sample_fields(s, grid, buf.data(), buf.size()));
  File f(dir / "fields.csv");
  std::fprintf(f.f, "xi,eta,X1_mm,X2_mm,u1_mm,u2_mm,u3_mm,von_mises_GPa,det_F\n");
  for (const auto& p : buf)
    std::fprintf(f.f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.xi, p.eta, p.x1, p.x2, p.u1,
                 p.u2, p.u3, p.von_mises, p.det_f);
}

void write_config(const fs::path& dir, const RunConfig& c) {
  File f(dir / "config.json");
  std::fputs(cswp_cli::serialize_config(c).c_str(), f.f);
}

void describe(std::FILE* f, const RunConfig& c, const cswp_section* s) {
  std::fprintf(f, "section %s", c.section.kind.c_str());
  if (c.section.kind == "rectangle") std::fprintf(f, " a=%.17g mm b=%.17g mm", c.section.a, c.section.b);
  std::fprintf(f, "\ndegree %d\nelements %d\ndofs %d\narea_mm2 %.17g\n", c.degree, c.elements,
               cswp_section_num_dofs(s), cswp_section_area(s));
  const auto& m = c.material;
  if (m.kind == "svk")
    std::fprintf(f, "material svk lambda=%.17g GPa mu=%.17g GPa\n", m.lambda, m.mu);
  else if (m.kind == "neohooke")
    std::fprintf(f, "material neohooke a10=%.17g GPa bulk=%.17g GPa\n", m.a10, m.bulk);
  else
    std::fprintf(f, "material mooneyrivlin b10=%.17g GPa b01=%.17g GPa bulk=%.17g GPa\n", m.b10, m.b01, m.bulk);
  std::fprintf(f, "formulation %s\ntolerance %.17g\n", c.formulation.c_str(), c.tolerance);
}

struct Outcome {
  Solution sol;
  std::vector<double> history;
};

// Writes residuals.csv in both outcomes; throws SolveFailure on divergence.
void run_solve(const RunConfig& c, const cswp_section* sec, const fs::path& dir, Outcome& out) {
  const cswp_material mat = to_material(c);
  const cswp_solve_options opts = to_options(c);
  double sp[6];
  prescriptors(c, sp);
  const cswp_status st = cswp_solve(sec, &mat, sp, &opts, nullptr, &out.sol.h);
  if (st == CSWP_ERR_DIVERGED) {
    const std::string msg = cswp_last_error();
    write_history(dir, failure_history());
    File f(dir / "summary.txt");
    describe(f.f, c, sec);
    std::fprintf(f.f, "status diverged\nerror %s\n", msg.c_str());
    throw SolveFailure(msg);
  }
  check(st);
  out.history = history_of(out.sol.h);
  write_history(dir, out.history);
}

void write_summary(const fs::path& dir, const RunConfig& c, const cswp_section* sec, const Outcome& o,
                   const double r[6], const double* C) {
  File f(dir / "summary.txt");
  describe(f.f, c, sec);
  double sp[6];
  prescriptors(c, sp);
  for (int i = 0; i < 6; ++i) std::fprintf(f.f, "%s%s %.17g\n", kSpNames[i], kSpUnits[i], sp[i]);
  std::fprintf(f.f, "status converged\niterations %d\nload_steps %d\nfinal_residual %.17g\n",
               cswp_solution_iterations(o.sol.h), cswp_solution_load_steps(o.sol.h),
               o.history.empty() ? 0.0 : o.history.back());
  for (int i = 0; i < 6; ++i) std::fprintf(f.f, "%s %.17g\n", kResNames[i], r[i]);
  double energy = 0.0;
  check(cswp_solution_energy(o.sol.h, &energy));
  std::fprintf(f.f, "energy_kN %.17g\n", energy);
  if (C)
    for (int p = 0; p < 6; ++p)
      std::fprintf(f.f, "C%d%d_%s %.17g\n", p + 1, p + 1, stiffness_unit(p, p), C[7 * p]);
}

int cmd_solve(const RunConfig& c, bool with_fields) {
  const fs::path dir = c.out;
  fs::create_directories(dir);
  Section sec;
  make_section(c, sec);
  Outcome o;
  run_solve(c, sec.h, dir, o);
  double r[6], C[36];
  check(cswp_solution_resultants(o.sol.h, r));
  check(cswp_solution_stiffness(o.sol.h, C));
  write_resultants(dir, r);
  write_stiffness(dir, C);
  if (with_fields) write_fields(dir, o.sol.h, c.grid);
  write_config(dir, c);
  write_summary(dir, c, sec.h, o, r, C);
  std::printf("converged in %d iterations, final residual %.3e\n", cswp_solution_iterations(o.sol.h),
              o.history.empty() ? 0.0 : o.history.back());
  std::printf("n = (%.6g, %.6g, %.6g) kN, m = (%.6g, %.6g, %.6g) kN*mm\n", r[0], r[1], r[2], r[3], r[4], r[5]);
  std::printf("outputs in %s\n", dir.string().c_str());
  return kOk;
}

struct SweepSink {
  std::FILE* f;
  int failed = 0;
};

void on_point(const cswp_sweep_point* p, void* user) {
  auto* s = static_cast<SweepSink*>(user);
  if (!p->converged) ++s->failed;
  std::fprintf(s->f, "%d,%.17g", p->index, p->value);
  for (double v : p->sp) std::fprintf(s->f, ",%.17g", v);
  std::fprintf(s->f, ",%d,%d,%d", p->converged, p->iterations, p->load_steps);
  for (double v : p->resultants) std::fprintf(s->f, ",%.17g", v);
  std::fprintf(s->f, ",%.17g", p->energy);
  for (int q = 0; q < 6; ++q) std::fprintf(s->f, ",%.17g", p->stiffness[7 * q]);
  std::fprintf(s->f, ",%.17g,\"%s\"\n", p->stiffness[2 * 6 + 5], p->converged ? "" : p->error);
}

int cmd_sweep(const RunConfig& c) {
  const fs::path dir = c.out;
  fs::create_directories(dir);
  Section sec;
  make_section(c, sec);
  const cswp_material mat = to_material(c);
  const cswp_solve_options opts = to_options(c);
  cswp_sweep_spec spec{};
  spec.proportional = c.sweep.proportional ? 1 : 0;
  spec.axis = c.sweep.axis;
  prescriptors(c, spec.base);
  spec.from = c.sweep.from;
  spec.to = c.sweep.to;
  spec.samples = c.sweep.samples;

  File f(dir / "sweep.csv");
  std::fprintf(f.f, "index,value");
  for (int i = 0; i < 6; ++i) std::fprintf(f.f, ",%s%s", kSpNames[i], kSpUnits[i]);
  std::fprintf(f.f, ",converged,iterations,load_steps");
  for (int i = 0; i < 6; ++i) std::fprintf(f.f, ",%s", kResNames[i]);
  std::fprintf(f.f, ",energy_kN");
  for (int q = 0; q < 6; ++q) std::fprintf(f.f, ",C%d%d_%s", q + 1, q + 1, stiffness_unit(q, q));
  std::fprintf(f.f, ",C36_kN*mm,error\n");
  SweepSink sink{f.f};
  check(cswp_sweep(sec.h, &mat, &spec, &opts, on_point, &sink));
  write_config(dir, c);
  {
    File s(dir / "summary.txt");
    describe(s.f, c, sec.h);
    std::fprintf(s.f, "sweep %s %s from %.17g to %.17g samples %d\nfailed_samples %d\n",
                 c.sweep.proportional ? "proportional" : "axis", cswp_cli::axis_name(c.sweep.axis).c_str(),
                 c.sweep.from, c.sweep.to, c.sweep.samples, sink.failed);
  }
  std::printf("%d samples, %d failed, outputs in %s\n", c.sweep.samples, sink.failed, dir.string().c_str());
  return sink.failed ? kSolveFailed : kOk;
}

int cmd_stiffness(const RunConfig& c) {
  const fs::path dir = c.out;
  fs::create_directories(dir);
  Section sec;
  make_section(c, sec);
  Outcome o;
  run_solve(c, sec.h, dir, o);
  double r[6], C[36];
  check(cswp_solution_resultants(o.sol.h, r));
  check(cswp_solution_stiffness(o.sol.h, C));
  write_resultants(dir, r);
  write_stiffness(dir, C);
  write_config(dir, c);
  write_summary(dir, c, sec.h, o, r, C);
  for (int p = 0; p < 6; ++p) {
    for (int q = 0; q < 6; ++q) std::printf("%s%14.6e", q ? " " : "", C[6 * p + q]);
    std::printf("\n");
  }
  return kOk;
}

struct ValidationSink {
  std::FILE* csv = nullptr;
};

void on_criterion(const cswp_criterion* c, void* user) {
  auto* s = static_cast<ValidationSink*>(user);
  char budget[48] = "no limit";
  if (c->time_limit > 0.0) std::snprintf(budget, sizeof budget, "limit %.0f s", c->time_limit);
  std::printf("%s %d %s (%.2f s, %s): %s\n", c->passed ? "PASS" : "FAIL", c->id, c->title, c->seconds, budget,
              c->detail);
  std::fflush(stdout);
  if (s->csv)
    std::fprintf(s->csv, "%d,%s,%.17g,%.17g,\"%s\",\"%s\"\n", c->id, c->passed ? "PASS" : "FAIL", c->seconds,
                 c->time_limit, c->title, c->detail);
}

int cmd_validate(const std::string& out) {
  std::unique_ptr<File> csv;
  if (!out.empty()) {
    fs::create_directories(out);
    csv = std::make_unique<File>(fs::path(out) / "validation.csv");
    std::fprintf(csv->f, "criterion,result,seconds,time_limit_s,title,detail\n");
  }
  ValidationSink sink{csv ? csv->f : nullptr};
  int all = 0;
  double ratio = 0.0;
  check(cswp_validate(on_criterion, &sink, &all, &ratio));
  std::printf("assembly time ratio pk1/pk2 %.3f\n", ratio);
  return all ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear cross-sectional warping solver for hyperelastic beams"};
  app.require_subcommand(1);

  std::string config_path, section, material, formulation, out;
  double a = 0, b = 0, lambda = 0, mu = 0, a10 = 0, b10 = 0, b01 = 0, bulk = 0, tol = 0;
  int degree = 0, elements = 0, steps = 0, max_iter = 0, grid = 0, workers = 0;
  std::vector<double> eps, kappa;

  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--section", section, "square | circle | rectangle");
  app.add_option("--a", a, "rectangle half-width along X1 (mm)");
  app.add_option("--b", b, "rectangle half-width along X2 (mm)");
  app.add_option("--degree", degree, "spline degree");
  app.add_option("--elements", elements, "elements per direction");
  app.add_option("--material", material, "svk | neohooke | mooneyrivlin");
  app.add_option("--lambda", lambda, "SVK lambda (GPa)");
  app.add_option("--mu", mu, "SVK mu (GPa)");
  app.add_option("--a10", a10, "neo-Hooke a10 (GPa)");
  app.add_option("--b10", b10, "Mooney-Rivlin b10 (GPa)");
  app.add_option("--b01", b01, "Mooney-Rivlin b01 (GPa)");
  app.add_option("--bulk", bulk, "bulk modulus (GPa)");
  app.add_option("--eps", eps, "eps1,eps2,eps3")->delimiter(',')->expected(3);
  app.add_option("--kappa", kappa, "kappa1,kappa2,kappa3 (1/mm)")->delimiter(',')->expected(3);
  app.add_option("--steps", steps, "load steps");
  app.add_option("--max-iter", max_iter, "Newton iterations per step");
  app.add_option("--formulation", formulation, "pk2 | pk1");
  app.add_option("--tol", tol, "residual tolerance");
  app.add_option("--workers", workers, "assembly threads");
  app.add_option("--out", out, "output directory");
  app.add_option("--grid", grid, "field sampling grid per direction");

  auto* solve = app.add_subcommand("solve", "solve one state and write all outputs");
  auto* sweep = app.add_subcommand("sweep", "sweep one prescriptor or a proportional path");
  auto* stiff = app.add_subcommand("stiffness", "solve and report the beam stiffness only");
  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  for (auto* s : {solve, sweep, stiff, validate}) s->fallthrough();

  std::string axis;
  double from = 0, to = 0;
  int samples = 0;
  sweep->add_option("--axis", axis, "eps1..kappa3");
  sweep->add_option("--from", from, "first value");
  sweep->add_option("--to", to, "last value");
  sweep->add_option("--samples", samples, "number of samples");
  auto* proportional = sweep->add_flag("--proportional", "scale the base prescriptors by value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto given = [&](const char* name) { return app.count(name) > 0; };
  try {
    if (*validate) return cmd_validate(out);

    RunConfig c = config_path.empty() ? RunConfig{} : cswp_cli::load_config(config_path);
    if (given("--section")) c.section.kind = section;
    if (given("--a")) c.section.a = a;
    if (given("--b")) c.section.b = b;
    if (given("--degree")) c.degree = degree;
    if (given("--elements")) c.elements = elements;
    if (given("--material")) {
      // switching kind resets the parameters to that kind's reference values
      c.material = cswp_cli::MaterialConfig{};
      c.material.kind = material;
    }
    if (given("--lambda")) c.material.lambda = lambda;
    if (given("--mu")) c.material.mu = mu;
    if (given("--a10")) c.material.a10 = a10;
    if (given("--b10")) c.material.b10 = b10;
    if (given("--b01")) c.material.b01 = b01;
    if (given("--bulk")) c.material.bulk = bulk;
    if (given("--eps")) std::copy(eps.begin(), eps.end(), c.eps.begin());
    if (given("--kappa")) std::copy(kappa.begin(), kappa.end(), c.kappa.begin());
    if (given("--steps")) c.steps = steps;
    if (given("--max-iter")) c.max_iterations = max_iter;
    if (given("--formulation")) c.formulation = formulation;
    if (given("--tol")) c.tolerance = tol;
    if (given("--workers")) c.workers = workers;
    if (given("--out")) c.out = out;
    if (given("--grid")) c.grid = grid;
    if (sweep->count("--axis")) c.sweep.axis = cswp_cli::parse_axis(axis);
    if (sweep->count("--from")) c.sweep.from = from;
    if (sweep->count("--to")) c.sweep.to = to;
    if (sweep->count("--samples")) c.sweep.samples = samples;
    if (proportional->count()) c.sweep.proportional = true;
    cswp_cli::validate_config(c);

    if (*solve) return cmd_solve(c, true);
    if (*sweep) return cmd_sweep(c);
    return cmd_stiffness(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolveFailure& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kSolveFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolveFailed;
  }
}
