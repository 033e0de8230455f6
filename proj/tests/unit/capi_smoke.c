/* Exercises the C interface from plain C. */
#include "medbounds/medbounds.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

int main(void) {
    const char* oterms[] = {"1", "X", "M", "BMI", "Gender"};
    const char* mterms[] = {"1", "X", "BMI", "Gender"};
    const double obeta[] = {-3.925, 0.020, 1.250, -0.064, 0.587};
    const double mbeta[] = {0.418, 0.017, -0.098, 0.595};
    double ocov[25] = {0}, mcov[16] = {0};
    const double ose[] = {0.899, 0.004, 0.264, 0.034, 0.376};
    const double mse[] = {0.296, 0.002, 0.012, 0.114};
    for (int i = 0; i < 5; ++i) ocov[i * 5 + i] = ose[i] * ose[i];
    for (int i = 0; i < 4; ++i) mcov[i * 4 + i] = mse[i] * mse[i];

    medb_glm *outcome = NULL, *mediator = NULL;
    EXPECT(medb_glm_create(oterms, 5, MEDB_ROLE_OUTCOME, obeta, ocov, &outcome) == MEDB_OK);
    EXPECT(medb_glm_create(mterms, 4, MEDB_ROLE_MEDIATOR, mbeta, mcov, &mediator) == MEDB_OK);
    EXPECT(medb_glm_size(outcome) == 5);

    const char* names[] = {"BMI", "Gender"};
    const double values[] = {28.5, 1.0};
    medb_contrast c = {50.0, 10.0, names, values, 2};
    double theta[6], sigma[36], lp;
    EXPECT(medb_glm_linear_predictor(outcome, 50.0, 0, names, values, 2, &lp) == MEDB_OK);
    EXPECT(fabs(lp + 4.162) < 1e-12);
    EXPECT(medb_theta(outcome, mediator, &c, theta, sigma) == MEDB_OK);
    EXPECT(fabs(theta[5] + 1.610) < 1e-12);

    double b[6], ui[6], p[2], d[24], e[3];
    EXPECT(medb_effect_bounds(theta, b) == MEDB_OK);
    EXPECT(fabs(b[0] - 0.5796) < 5e-4 && fabs(b[1] - 1.0206) < 5e-4);
    EXPECT(medb_p_bounds(theta, p) == MEDB_OK);
    EXPECT(fabs(p[0] - 0.83341) < 5e-4);
    EXPECT(medb_uncertainty(theta, sigma, 0.05, ui) == MEDB_OK);
    EXPECT(ui[0] < b[0] && ui[5] > b[5]);
    EXPECT(medb_derivative_matrix(theta, d) == MEDB_OK);
    EXPECT(d[4 * 4 + 0] == 0.0 && d[4 * 4 + 1] == 0.0);
    EXPECT(medb_point_effects(theta, e) == MEDB_OK);
    EXPECT(fabs(e[2] - e[0] - e[1]) < 1e-15);

    /* errors carry a status and message */
    EXPECT(medb_uncertainty(theta, sigma, 1.5, ui) == MEDB_ERR_INVALID_INPUT);
    EXPECT(strstr(medb_last_error(), "alpha") != NULL);
    EXPECT(medb_exit_code(MEDB_ERR_INVALID_INPUT) == 1);
    EXPECT(medb_exit_code(MEDB_ERR_SEPARATION) == 2);
    EXPECT(medb_exit_code(MEDB_ERR_VALIDATION_FAILED) == 3);
    EXPECT(medb_glm_create(mterms, 4, MEDB_ROLE_MEDIATOR, NULL, mcov, &mediator) == MEDB_ERR_INVALID_INPUT);

    /* simulate, fit, compare with the exact law */
    medb_scm* scm = NULL;
    medb_dataset* data = NULL;
    medb_glm* fitted = NULL;
    EXPECT(medb_scm_bundled("lung-cancer-like", &scm) == MEDB_OK);
    EXPECT(medb_scm_sample(scm, 2000, 9, &data) == MEDB_OK);
    EXPECT(medb_dataset_rows(data) == 2000);
    EXPECT(medb_glm_fit(data, mterms, 4, MEDB_ROLE_MEDIATOR, &fitted) == MEDB_OK);
    int iterations = 0;
    EXPECT(medb_glm_iterations(fitted, &iterations) == MEDB_OK && iterations > 0);
    const double grid_values[] = {27.564, 1.0};
    medb_contrast sc = {50.0, 10.0, names, grid_values, 2};
    double truth[3], stheta[6];
    EXPECT(medb_scm_true_effects(scm, &sc, truth) == MEDB_OK);
    EXPECT(medb_scm_theta(scm, &sc, stheta) == MEDB_OK);
    EXPECT(medb_point_effects(stheta, e) == MEDB_OK);
    EXPECT(fabs(e[0] - truth[0]) < 1e-9);

    char *out = NULL, *warn = NULL;
    EXPECT(medb_run("effects", "{\"models\": \"published_models.json\", \"contrast\": {\"x\": 50}}", MEDB_DATA_DIR, &out,
                    &warn) == MEDB_OK);
    EXPECT(out && strstr(out, "male") != NULL);
    medb_free_string(out);
    medb_free_string(warn);
    EXPECT(medb_run("effects", "{\"alpha\": 3}", NULL, &out, &warn) == MEDB_ERR_INVALID_INPUT);
    EXPECT(out == NULL);

    medb_glm_free(fitted);
    medb_dataset_free(data);
    medb_scm_free(scm);
    medb_glm_free(outcome);
    medb_glm_free(mediator);
    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    return failures ? 1 : 0;
}
