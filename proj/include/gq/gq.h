#ifndef GQ_GQ_H
#define GQ_GQ_H

/* C interface to the gquant library.
 *
 * Every function returns a gq_status. On failure a thread-local message is
 * available from gq_last_error() until the next call on the same thread.
 * Strings handed out by the library are owned by the caller and released with
 * gq_string_free. Handles are released with their *_destroy function; passing
 * NULL to a destroy function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GQ_BUILDING_LIBRARY)
#define GQ_API __declspec(dllexport)
#else
#define GQ_API __declspec(dllimport)
#endif
#else
#define GQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gq_status {
  GQ_OK = 0,
  GQ_ERR_USAGE = 1,        /* invalid argument or state */
  GQ_ERR_PARSE = 2,        /* expression or input syntax error */
  GQ_ERR_CHECK_FAILED = 3, /* a property check reported a failure */
  GQ_ERR_NUMERICAL = 4,    /* integrator, quadrature or evaluation failure */
  GQ_ERR_INTERNAL = 5
} gq_status;

typedef enum gq_format { GQ_FORMAT_JSON = 0, GQ_FORMAT_CSV = 1 } gq_format;

typedef struct gq_space gq_space;
typedef struct gq_expr gq_expr;
typedef struct gq_trajectory gq_trajectory;

GQ_API const char* gq_last_error(void);
/* Byte offset of the last parse error, or -1. */
GQ_API long gq_last_error_offset(void);
GQ_API void gq_string_free(char* s);
GQ_API const char* gq_version(void);

/* Phase space T*R^n with hbar and mass. */
GQ_API gq_status gq_space_create(int dof, double hbar, double mass, gq_space** out);
GQ_API void gq_space_destroy(gq_space* space);
/* Declares a named constant usable in expressions. */
GQ_API gq_status gq_space_set_param(gq_space* space, const char* name, double value);

GQ_API gq_status gq_expr_parse(const gq_space* space, const char* text, gq_expr** out);
GQ_API void gq_expr_destroy(gq_expr* expr);
GQ_API gq_status gq_expr_to_string(const gq_expr* expr, char** out);
/* point has 2n entries ordered (x1..xn, p1..pn). */
GQ_API gq_status gq_expr_eval(const gq_expr* expr, const double* point, size_t len, double* re, double* im);

GQ_API gq_status gq_poisson_bracket(const gq_expr* f, const gq_expr* g, gq_expr** out);

/* Implicit midpoint flow of Hamilton's equations from t = 0 to t_end. */
GQ_API gq_status gq_flow(const gq_expr* hamiltonian, const double* state0, size_t len, double t_end, double dt,
                         gq_trajectory** out);
GQ_API void gq_trajectory_destroy(gq_trajectory* traj);
GQ_API gq_status gq_trajectory_write(const gq_trajectory* traj, gq_format format, char** out);
GQ_API gq_status gq_trajectory_size(const gq_trajectory* traj, size_t* steps, size_t* dim);
/* Final state (len must equal the phase-space dimension). */
GQ_API gq_status gq_trajectory_final_state(const gq_trajectory* traj, double* state, size_t len);
GQ_API gq_status gq_trajectory_energy_drift(const gq_trajectory* traj, double* drift);

/* Runs a property suite (poisson, curvature, commutator, liouville,
 * polarization). theta may be NULL (both presets) or a one-form such as
 * "2*p1 dx1". The report is JSON or CSV; *passed is 1 when every identity
 * holds. A failing suite still returns GQ_OK with *passed = 0. */
GQ_API gq_status gq_check_run(const gq_space* space, const char* suite, uint64_t seed, const char* theta,
                              gq_format format, char** report, int* passed);

/* Spectrum of the prequantum harmonic oscillator ("prequantum-ho", modes
 * -K..K) or of Q(H) on the Segal-Bargmann basis ("bargmann", k = 0..K). */
GQ_API gq_status gq_spectrum(const char* kind, int k_max, double hbar, gq_format format, char** out);

/* Q(f) applied to a section s with the given one-form (preset or explicit). */
GQ_API gq_status gq_prequantize(const gq_space* space, const char* f, const char* section, const char* theta,
                                char** out);

/* Classifies the column span of `subspace_json` (a 2n x k matrix, array of
 * rows) with respect to the form `form_json` (2n x 2n, array of rows). */
GQ_API gq_status gq_classify(const char* form_json, const char* subspace_json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* GQ_GQ_H */
