/* C interface to the mediation-bounds library.
 *
 * Every function returns a medb_status; on failure the message is available from
 * medb_last_error() on the same thread until the next call. Handles are opaque and
 * owned by the caller (free with the matching *_free). Strings returned through
 * char** must be released with medb_free_string.
 *
 * theta is the 6-vector (r_beta(x,0), r_beta(x*,0), r_beta(x,1), r_beta(x*,1),
 * r_gamma(x), r_gamma(x*)); matrices are row-major.
 */
#ifndef MEDBOUNDS_H
#define MEDBOUNDS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MEDB_API __declspec(dllexport)
#else
#define MEDB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum medb_status {
    MEDB_OK = 0,
    MEDB_ERR_INVALID_INPUT = 1,
    MEDB_ERR_IO = 2,
    MEDB_ERR_SINGULAR_DESIGN = 3,
    MEDB_ERR_NO_CONVERGENCE = 4,
    MEDB_ERR_SEPARATION = 5,
    MEDB_ERR_DEGENERATE = 6,
    MEDB_ERR_NON_PSD = 7,
    MEDB_ERR_VALIDATION_FAILED = 8,
    MEDB_ERR_INTERNAL = 9
} medb_status;

typedef enum medb_role { MEDB_ROLE_OUTCOME = 0, MEDB_ROLE_MEDIATOR = 1 } medb_role;

typedef struct medb_dataset medb_dataset;
typedef struct medb_glm medb_glm;
typedef struct medb_scm medb_scm;

/* Contrast (x, x*, c); covariate names and values are parallel arrays. */
typedef struct medb_contrast {
    double x;
    double x_star;
    const char* const* covariate_names;
    const double* covariate_values;
    size_t covariate_count;
} medb_contrast;

MEDB_API const char* medb_version(void);
MEDB_API const char* medb_last_error(void);
MEDB_API const char* medb_status_name(medb_status status);
/* 0 ok, 1 user error, 2 numerical failure, 3 validation failure */
MEDB_API int medb_exit_code(medb_status status);
MEDB_API void medb_free_string(char* s);

/* columns_json: {"outcome":..,"mediator":..,"exposure":..,"covariates":[..]} or NULL for Y/M/X. */
MEDB_API medb_status medb_dataset_read_csv(const char* path, const char* columns_json, medb_dataset** out);
MEDB_API size_t medb_dataset_rows(const medb_dataset* data);
MEDB_API size_t medb_dataset_dropped_rows(const medb_dataset* data);
MEDB_API void medb_dataset_free(medb_dataset* data);

MEDB_API medb_status medb_glm_fit(const medb_dataset* data, const char* const* terms, size_t term_count,
                                  medb_role role, medb_glm** out);
/* Build a model from known coefficients and covariance (term_count x term_count). */
MEDB_API medb_status medb_glm_create(const char* const* terms, size_t term_count, medb_role role,
                                     const double* coefficients, const double* covariance, medb_glm** out);
MEDB_API size_t medb_glm_size(const medb_glm* model);
MEDB_API medb_status medb_glm_coefficients(const medb_glm* model, double* out);
MEDB_API medb_status medb_glm_covariance(const medb_glm* model, double* out);
MEDB_API medb_status medb_glm_iterations(const medb_glm* model, int* out);
/* mediator < 0 means "not supplied". */
MEDB_API medb_status medb_glm_linear_predictor(const medb_glm* model, double exposure, int mediator,
                                               const char* const* covariate_names, const double* covariate_values,
                                               size_t covariate_count, double* out);
MEDB_API void medb_glm_free(medb_glm* model);

MEDB_API medb_status medb_theta(const medb_glm* outcome, const medb_glm* mediator, const medb_contrast* contrast,
                                double theta[6], double sigma[36]);
/* out = (NDE, NIE, TE) on the log odds-ratio scale */
MEDB_API medb_status medb_point_effects(const double theta[6], double out[3]);
MEDB_API medb_status medb_psi_effects(const double theta[6], double psi, double out[3]);
MEDB_API medb_status medb_p_bounds(const double theta[6], double out[2]);
/* out = (NDE lower, NDE upper, NIE lower, NIE upper, TE lower, TE upper) */
MEDB_API medb_status medb_effect_bounds(const double theta[6], double out[6]);
/* 6 x 4 row-major; columns d(l)NDE, d(u)NDE, d(l)NIE, d(u)NIE */
MEDB_API medb_status medb_derivative_matrix(const double theta[6], double out[24]);
/* Uncertainty intervals, same layout as medb_effect_bounds. */
MEDB_API medb_status medb_uncertainty(const double theta[6], const double sigma[36], double alpha, double out[6]);

MEDB_API medb_status medb_scm_load(const char* path, medb_scm** out);
/* name: "lung-cancer-like" or "pccwd-counterexample" */
MEDB_API medb_status medb_scm_bundled(const char* name, medb_scm** out);
MEDB_API medb_status medb_scm_true_effects(const medb_scm* scm, const medb_contrast* contrast, double out[3]);
MEDB_API medb_status medb_scm_theta(const medb_scm* scm, const medb_contrast* contrast, double theta[6]);
MEDB_API medb_status medb_scm_sample(const medb_scm* scm, size_t n, uint64_t seed, medb_dataset** out);
MEDB_API void medb_scm_free(medb_scm* scm);

/* Run a batch command (fit, effects, bounds, curve, simulate, validate) with a JSON
 * config. Relative paths resolve against base_dir (may be NULL). *output receives the
 * rendered result and *warnings a newline-separated list (either may be NULL on
 * failure). A failing validation returns MEDB_ERR_VALIDATION_FAILED with the report
 * still in *output. */
MEDB_API medb_status medb_run(const char* command, const char* config_json, const char* base_dir, char** output,
                              char** warnings);

#ifdef __cplusplus
}
#endif

#endif
