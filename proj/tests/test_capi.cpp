#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "cswp/cswp.h"
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

namespace {

cswp_material reference(cswp_material_kind k) {
  cswp_material m;
  REQUIRE(cswp_material_reference(k, &m) == CSWP_OK);
  return m;
}

const double kMultiaxial[6] = {0.02, 0.03, 0.1, 0.01, 0.02, 0.02};

struct Sink {
  std::vector<cswp_sweep_point> points;
  std::vector<std::string> errors;
};

void collect(const cswp_sweep_point* p, void* user) {
  auto* s = static_cast<Sink*>(user);
  s->points.push_back(*p);
  s->errors.emplace_back(p->error ? p->error : "");
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and defaults") {
    CHECK(std::strlen(cswp_version()) > 0);
    cswp_solve_options o;
    cswp_solve_options_default(&o);
    CHECK(o.tolerance == 1e-10);
    CHECK(o.load_steps == 1);
    CHECK(o.max_load_steps == 64);
    CHECK(o.formulation == CSWP_PK2);
    const cswp_material m = reference(CSWP_SVK);
    CHECK(m.lambda == 121.0);
    CHECK(m.mu == 80.0);
  }

  TEST_CASE("sections") {
    cswp_section* s = nullptr;
    REQUIRE(cswp_section_square(3, 5, &s) == CSWP_OK);
    CHECK(cswp_section_num_dofs(s) == 198);
    CHECK(std::abs(cswp_section_area(s) - 1.0) < 1e-12);
    cswp_section_destroy(s);
    REQUIRE(cswp_section_circle(3, 5, &s) == CSWP_OK);
    CHECK(std::abs(cswp_section_area(s) - M_PI) < 1e-6);
    cswp_section_destroy(s);
    REQUIRE(cswp_section_rectangle(1.0, 0.5, 3, 5, &s) == CSWP_OK);
    CHECK(std::abs(cswp_section_area(s) - 2.0) < 1e-12);
    cswp_section_destroy(s);

    CHECK(cswp_section_square(0, 5, &s) == CSWP_ERR_PARAMETER);
    CHECK(std::strlen(cswp_last_error()) > 0);
    CHECK(cswp_section_square(3, 5, nullptr) == CSWP_ERR_PARAMETER);
    cswp_section_destroy(nullptr);
    cswp_solution_destroy(nullptr);
    CHECK(cswp_section_num_dofs(nullptr) == 0);
  }

  TEST_CASE("solve and post-process") {
    cswp_section* s = nullptr;
    REQUIRE(cswp_section_square(3, 5, &s) == CSWP_OK);
    const cswp_material m = reference(CSWP_SVK);
    cswp_solution* sol = nullptr;
    REQUIRE(cswp_solve(s, &m, kMultiaxial, nullptr, nullptr, &sol) == CSWP_OK);
    CHECK(std::strlen(cswp_last_error()) == 0);
    const size_t n = cswp_solution_history(sol, nullptr, 0);
    std::vector<double> h(n);
    CHECK(cswp_solution_history(sol, h.data(), n) == n);
    CHECK(h.back() <= 1e-10);
    CHECK(cswp_solution_iterations(sol) == static_cast<int>(n) - 1);
    CHECK(cswp_solution_state(sol, nullptr, 0) == 198);

    double r[6], C[36], e = 0.0;
    REQUIRE(cswp_solution_resultants(sol, r) == CSWP_OK);
    REQUIRE(cswp_solution_stiffness(sol, C) == CSWP_OK);
    REQUIRE(cswp_solution_energy(sol, &e) == CSWP_OK);
    CHECK(r[2] > 0.0);
    CHECK(e > 0.0);
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) CHECK(std::abs(C[6 * p + q] - C[6 * q + p]) <= 1e-8 * std::abs(C[14]));

    std::vector<cswp_field_sample> f(16);
    CHECK(cswp_solution_sample_fields(sol, 4, f.data(), f.size()) == CSWP_OK);
    CHECK(f[5].det_f > 0.0);
    CHECK(cswp_solution_sample_fields(sol, 5, f.data(), f.size()) == CSWP_ERR_PARAMETER);

    // warm start from the converged state of the same section
    cswp_solution* again = nullptr;
    REQUIRE(cswp_solve(s, &m, kMultiaxial, nullptr, sol, &again) == CSWP_OK);
    CHECK(cswp_solution_iterations(again) == 0);
    cswp_solution_destroy(again);

    cswp_section* other = nullptr;
    REQUIRE(cswp_section_square(3, 5, &other) == CSWP_OK);
    CHECK(cswp_solve(other, &m, kMultiaxial, nullptr, sol, &again) == CSWP_ERR_PARAMETER);
    CHECK(again == nullptr);
    cswp_section_destroy(other);

    cswp_solution_destroy(sol);
    cswp_section_destroy(s);
  }

  TEST_CASE("formulations agree through the C API") {
    cswp_section* s = nullptr;
    REQUIRE(cswp_section_circle(3, 5, &s) == CSWP_OK);
    const cswp_material m = reference(CSWP_MOONEY_RIVLIN);
    cswp_solve_options o;
    cswp_solve_options_default(&o);
    cswp_solution *a = nullptr, *b = nullptr;
    REQUIRE(cswp_solve(s, &m, kMultiaxial, &o, nullptr, &a) == CSWP_OK);
    o.formulation = CSWP_PK1;
    o.workers = 2;
    REQUIRE(cswp_solve(s, &m, kMultiaxial, &o, nullptr, &b) == CSWP_OK);
    double ra[6], rb[6];
    cswp_solution_resultants(a, ra);
    cswp_solution_resultants(b, rb);
    double scale = 0.0;
    for (double v : ra) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < 6; ++i) CHECK(std::abs(ra[i] - rb[i]) <= 1e-8 * scale);
    cswp_solution_destroy(a);
    cswp_solution_destroy(b);
    cswp_section_destroy(s);
  }

  TEST_CASE("failures map to status codes") {
    cswp_section* s = nullptr;
    REQUIRE(cswp_section_square(3, 5, &s) == CSWP_OK);
    const cswp_material m = reference(CSWP_SVK);
    cswp_solve_options o;
    cswp_solve_options_default(&o);
    o.max_iterations = 2;
    o.max_load_steps = 1;
    cswp_solution* sol = nullptr;
    CHECK(cswp_solve(s, &m, kMultiaxial, &o, nullptr, &sol) == CSWP_ERR_DIVERGED);
    CHECK(sol == nullptr);
    CHECK(cswp_last_failure_history(nullptr, 0) == 3);
    double h[3];
    cswp_last_failure_history(h, 3);
    CHECK(h[2] > 1e-10);

    cswp_material bad = m;
    bad.mu = -1.0;
    CHECK(cswp_solve(s, &bad, kMultiaxial, nullptr, nullptr, &sol) == CSWP_ERR_PARAMETER);
    CHECK(cswp_solve(s, nullptr, kMultiaxial, nullptr, nullptr, &sol) == CSWP_ERR_PARAMETER);
    CHECK(cswp_solve(nullptr, &m, kMultiaxial, nullptr, nullptr, &sol) == CSWP_ERR_PARAMETER);
    o = {};
    cswp_solve_options_default(&o);
    o.workers = 0;
    CHECK(cswp_solve(s, &m, kMultiaxial, &o, nullptr, &sol) == CSWP_ERR_PARAMETER);
    double r[6];
    CHECK(cswp_solution_resultants(nullptr, r) == CSWP_ERR_PARAMETER);
    cswp_section_destroy(s);
  }

  TEST_CASE("sweep callback order") {
    cswp_section* s = nullptr;
    REQUIRE(cswp_section_square(3, 4, &s) == CSWP_OK);
    const cswp_material m = reference(CSWP_NEO_HOOKE);
    cswp_sweep_spec spec{};
    spec.axis = 5;
    spec.from = 0.0;
    spec.to = 0.3;
    spec.samples = 4;
    Sink sink;
    REQUIRE(cswp_sweep(s, &m, &spec, nullptr, collect, &sink) == CSWP_OK);
    REQUIRE(sink.points.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(sink.points[i].index == i);
      CHECK(sink.points[i].converged == 1);
      CHECK(sink.points[i].sp[5] == doctest::Approx(0.1 * i));
    }
    CHECK(sink.points[3].resultants[5] > sink.points[1].resultants[5]);
    spec.samples = 1;
    CHECK(cswp_sweep(s, &m, &spec, nullptr, collect, &sink) == CSWP_ERR_PARAMETER);
    cswp_section_destroy(s);
  }
}
