/*
 * qtomo C API.
 *
 * Every function returns a status code (QTOMO_OK on success). On failure a
 * human-readable message is available from qtomo_last_error() on the calling
 * thread until the next failing call. Handles are opaque and must be released
 * with the matching *_free function; free functions accept NULL.
 */
#ifndef QTOMO_H
#define QTOMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define QTOMO_API __declspec(dllexport)
#else
#  define QTOMO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum qtomo_status {
  QTOMO_OK = 0,
  QTOMO_ERR_INVALID_ARGUMENT = -1,
  QTOMO_ERR_NOT_HERMITIAN = -2,
  QTOMO_ERR_NO_CONVERGENCE = -3,
  QTOMO_ERR_QUADRATURE = -4,
  QTOMO_ERR_INVALID_STATE = -5,
  QTOMO_ERR_RECORD_MISMATCH = -6,
  QTOMO_ERR_EMPTY_STREAM = -7,
  QTOMO_ERR_IO = -8,
  QTOMO_ERR_FORMAT = -9,
  QTOMO_ERR_NULL_POINTER = -10,
  QTOMO_ERR_BUFFER_TOO_SMALL = -11,
  QTOMO_ERR_INTERNAL = -99
};

enum qtomo_kind { QTOMO_KIND_HOMODYNE = 0, QTOMO_KIND_SPIN = 1 };

/* Homodyne outcome convention for record files: Y stores y, X stores y/sqrt(2). */
enum qtomo_convention { QTOMO_CONVENTION_Y = 0, QTOMO_CONVENTION_X = 1 };

typedef struct qtomo_state_s* qtomo_state_t;
typedef struct qtomo_records_s* qtomo_records_t;
typedef struct qtomo_target_s* qtomo_target_t;

typedef struct qtomo_estimate {
  double mean_re;
  double mean_im;
  double stderr_re; /* NaN when stderr_defined == 0 */
  double stderr_im;
  uint64_t count;
  int stderr_defined;
} qtomo_estimate_t;

QTOMO_API const char* qtomo_status_name(int status);
QTOMO_API const char* qtomo_last_error(void);

/* ---- states ------------------------------------------------------------ */

/* rho is row-major with interleaved (re, im) pairs: 2 * dim * dim doubles. */
QTOMO_API int qtomo_state_fock(int n_max, const double* rho, qtomo_state_t* out);
QTOMO_API int qtomo_state_coherent(double alpha_re, double alpha_im, int n_max, qtomo_state_t* out);
QTOMO_API int qtomo_state_spin(int two_j, const double* rho, qtomo_state_t* out);
QTOMO_API int qtomo_state_load(const char* path, qtomo_state_t* out);
QTOMO_API int qtomo_state_save(qtomo_state_t state, const char* path);
QTOMO_API int qtomo_state_kind(qtomo_state_t state, int* kind);
/* n_max for Fock states, two_j for spin states. */
QTOMO_API int qtomo_state_size_label(qtomo_state_t state, int* label);
QTOMO_API void qtomo_state_free(qtomo_state_t state);

/* ---- records ----------------------------------------------------------- */

/* Homodyne records for Fock states, spin records for spin states. Record i
 * depends only on (seed, i); the worker count never changes the output. */
QTOMO_API int qtomo_simulate(qtomo_state_t state, uint64_t count, uint64_t seed, unsigned workers,
                             qtomo_records_t* out);
QTOMO_API int qtomo_records_load(const char* path, qtomo_records_t* out);
QTOMO_API int qtomo_records_save(qtomo_records_t records, const char* path, int convention);
QTOMO_API int qtomo_records_kind(qtomo_records_t records, int* kind);
QTOMO_API int qtomo_records_count(qtomo_records_t records, size_t* count);
QTOMO_API int qtomo_records_homodyne_get(qtomo_records_t records, size_t index, double* phi, double* y);
QTOMO_API int qtomo_records_spin_get(qtomo_records_t records, size_t index, double axis[3], int* two_m);
QTOMO_API void qtomo_records_free(qtomo_records_t records);

/* ---- targets ----------------------------------------------------------- */

/* rho_{n+l, n} (homodyne). */
QTOMO_API int qtomo_target_matrix_element(int n, int l, qtomo_target_t* out);
/* <a^dagger a> (homodyne). */
QTOMO_API int qtomo_target_photon_number(qtomo_target_t* out);
/* "I", "Jx", "Jy" or "Jz" (spin). */
QTOMO_API int qtomo_target_spin_operator(const char* name, qtomo_target_t* out);
/* Explicit Hermitian matrix (spin), interleaved row-major. */
QTOMO_API int qtomo_target_spin_matrix(size_t dim, const double* matrix, qtomo_target_t* out);
/* Target object in run-config JSON form, e.g. {"kind": "photon-number"}. */
QTOMO_API int qtomo_target_from_json(const char* json, qtomo_target_t* out);
QTOMO_API int qtomo_target_kind(qtomo_target_t target, int* kind);
QTOMO_API void qtomo_target_free(qtomo_target_t target);

/* ---- reconstruction ---------------------------------------------------- */

/* two_j is required for spin targets and ignored otherwise. */
QTOMO_API int qtomo_reconstruct(qtomo_records_t records, qtomo_target_t target, int two_j, unsigned workers,
                                qtomo_estimate_t* out);

/* Writes the result JSON object (NUL-terminated). If buf is too small,
 * *needed receives the required size including the terminator. */
QTOMO_API int qtomo_estimate_to_json(qtomo_target_t target, const qtomo_estimate_t* estimate, char* buf,
                                     size_t buf_len, size_t* needed);

/* ---- kernels ----------------------------------------------------------- */

/* Estimator of rho_{n+l, n} at one record; cutoff <= 0 selects the default. */
QTOMO_API int qtomo_homodyne_kernel(int n, int l, double phi, double y, double cutoff, double* re,
                                    double* im);
QTOMO_API int qtomo_photon_number_kernel(double y, double* value);
/* Closed-form spin estimator sigma(A)(axis, two_lambda / 2). */
QTOMO_API int qtomo_spin_kernel(qtomo_target_t target, int two_j, const double axis[3], int two_lambda,
                                double* re, double* im);
/* CSV export. Homodyne targets: "y,re,im" over y in [grid_min, grid_max] at
 * phi = 0. Spin targets: "theta,two_lambda,re,im" with the axis
 * (sin theta, 0, cos theta). */
QTOMO_API int qtomo_kernel_export(qtomo_target_t target, int two_j, double grid_min, double grid_max,
                                  size_t points, const char* csv_path);

/* ---- validation -------------------------------------------------------- */

/* Runs the oracle suites. The report (one line per check) is written to
 * report_path when non-NULL and to buf when non-NULL. */
QTOMO_API int qtomo_validate(const char* report_path, char* buf, size_t buf_len, size_t* needed,
                             int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* QTOMO_H */
