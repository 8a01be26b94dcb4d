#ifndef CSWP_H
#define CSWP_H

#include <stddef.h>

#if defined(_WIN32)
#define CSWP_API __declspec(dllexport)
#else
#define CSWP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Units: lengths in mm, moduli in GPa, forces in kN. */

typedef struct cswp_section cswp_section;
typedef struct cswp_solution cswp_solution;

typedef enum {
  CSWP_OK = 0,
  CSWP_ERR_PARAMETER = 1,
  CSWP_ERR_GEOMETRY = 2,
  CSWP_ERR_INVERTED = 3,
  CSWP_ERR_SINGULAR_POINT = 4,
  CSWP_ERR_FACTORIZATION = 5,
  CSWP_ERR_DIVERGED = 6,
  CSWP_ERR_INTERNAL = 7
} cswp_status;

typedef enum { CSWP_SVK = 0, CSWP_NEO_HOOKE = 1, CSWP_MOONEY_RIVLIN = 2 } cswp_material_kind;

/* Only the fields of the selected kind are read. */
typedef struct {
  cswp_material_kind kind;
  double lambda;
  double mu;
  double a10;
  double b10;
  double b01;
  double bulk;
} cswp_material;

typedef enum { CSWP_PK2 = 0, CSWP_PK1 = 1 } cswp_formulation;

typedef struct {
  double tolerance;
  int max_iterations;
  int load_steps;
  int max_load_steps;
  int record_history;
  cswp_formulation formulation;
  int workers;
} cswp_solve_options;

typedef struct {
  double xi, eta;
  double x1, x2;
  double u1, u2, u3;
  double von_mises;
  double det_f;
} cswp_field_sample;

CSWP_API const char* cswp_version(void);

/* Message of the last failed call on this thread. */
CSWP_API const char* cswp_last_error(void);

/* Residual history of the last divergence on this thread; returns its full
   length and copies at most cap entries. */
CSWP_API size_t cswp_last_failure_history(double* buf, size_t cap);

CSWP_API void cswp_solve_options_default(cswp_solve_options* opts);
CSWP_API cswp_status cswp_material_reference(cswp_material_kind kind, cswp_material* out);

CSWP_API cswp_status cswp_section_square(int degree, int elements, cswp_section** out);
CSWP_API cswp_status cswp_section_circle(int degree, int elements, cswp_section** out);
/* |X1| < a, |X2| < b. */
CSWP_API cswp_status cswp_section_rectangle(double a, double b, int degree, int elements, cswp_section** out);
CSWP_API void cswp_section_destroy(cswp_section* section);
CSWP_API int cswp_section_num_dofs(const cswp_section* section);
CSWP_API double cswp_section_area(const cswp_section* section);

/* sp = (eps1, eps2, eps3, kappa1, kappa2, kappa3). opts and warm may be NULL. */
CSWP_API cswp_status cswp_solve(const cswp_section* section, const cswp_material* material, const double sp[6],
                                const cswp_solve_options* opts, const cswp_solution* warm, cswp_solution** out);
CSWP_API void cswp_solution_destroy(cswp_solution* solution);

CSWP_API int cswp_solution_iterations(const cswp_solution* solution);
CSWP_API int cswp_solution_load_steps(const cswp_solution* solution);
/* Residual norms of the final load step, starting with the warm-start residual. */
CSWP_API size_t cswp_solution_history(const cswp_solution* solution, double* buf, size_t cap);
/* Solution vector: control-point displacements, then lambda, then mu. */
CSWP_API size_t cswp_solution_state(const cswp_solution* solution, double* buf, size_t cap);

/* (n1, n2, n3, m1, m2, m3). */
CSWP_API cswp_status cswp_solution_resultants(const cswp_solution* solution, double out[6]);
CSWP_API cswp_status cswp_solution_energy(const cswp_solution* solution, double* out);
/* Row-major 6x6. */
CSWP_API cswp_status cswp_solution_stiffness(const cswp_solution* solution, double out[36]);
/* grid x grid samples, xi fastest; needs cap >= grid * grid. */
CSWP_API cswp_status cswp_solution_sample_fields(const cswp_solution* solution, int grid, cswp_field_sample* buf,
                                                 size_t cap);

typedef struct {
  int proportional;
  int axis;
  double base[6];
  double from;
  double to;
  int samples;
} cswp_sweep_spec;

typedef struct {
  int index;
  double value;
  double sp[6];
  int converged;
  const char* error;
  int iterations;
  int load_steps;
  double resultants[6];
  double stiffness[36];
  double energy;
} cswp_sweep_point;

typedef void (*cswp_sweep_callback)(const cswp_sweep_point* point, void* user);

CSWP_API cswp_status cswp_sweep(const cswp_section* section, const cswp_material* material,
                                const cswp_sweep_spec* spec, const cswp_solve_options* opts,
                                cswp_sweep_callback callback, void* user);

typedef struct {
  int id;
  const char* title;
  int passed;
  double seconds;
  double time_limit;
  const char* detail;
} cswp_criterion;

typedef void (*cswp_criterion_callback)(const cswp_criterion* criterion, void* user);

/* Runs the acceptance criteria; callback may be NULL. */
CSWP_API cswp_status cswp_validate(cswp_criterion_callback callback, void* user, int* all_passed,
                                   double* assembly_time_ratio);

#ifdef __cplusplus
}
#endif

#endif
