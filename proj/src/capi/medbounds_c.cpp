#include "medbounds/medbounds.h"

#include "medbounds/analysis.hpp"
#include "medbounds/error.hpp"
#include "medbounds/scm.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

struct medb_dataset {
    medb::Dataset data;
};
struct medb_glm {
    medb::FittedGlm model;
};
struct medb_scm {
    medb::StructuralModel scm;
};

namespace {

thread_local std::string last_error;

medb_status to_status(medb::ErrorKind k) {
    switch (k) {
        case medb::ErrorKind::invalid_input: return MEDB_ERR_INVALID_INPUT;
        case medb::ErrorKind::io: return MEDB_ERR_IO;
        case medb::ErrorKind::singular_design: return MEDB_ERR_SINGULAR_DESIGN;
        case medb::ErrorKind::no_convergence: return MEDB_ERR_NO_CONVERGENCE;
        case medb::ErrorKind::separation: return MEDB_ERR_SEPARATION;
        case medb::ErrorKind::degenerate: return MEDB_ERR_DEGENERATE;
        case medb::ErrorKind::non_psd: return MEDB_ERR_NON_PSD;
        case medb::ErrorKind::validation_failed: return MEDB_ERR_VALIDATION_FAILED;
    }
    return MEDB_ERR_INTERNAL;
}

template <class F>
medb_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return MEDB_OK;
    } catch (const medb::Error& e) {
        last_error = e.what();
        return to_status(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return MEDB_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
    if (!p) medb::fail(medb::ErrorKind::invalid_input, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

medb::Vector6 theta_in(const double* t) {
    require(t, "theta");
    medb::Vector6 v;
    for (int i = 0; i < 6; ++i) v[i] = t[i];
    return v;
}

medb::ContrastSpec contrast_in(const medb_contrast* c) {
    require(c, "contrast");
    medb::ContrastSpec out{c->x, c->x_star, {}};
    if (c->covariate_count) {
        require(c->covariate_names, "covariate names");
        require(c->covariate_values, "covariate values");
    }
    for (size_t i = 0; i < c->covariate_count; ++i) {
        require(c->covariate_names[i], "covariate name");
        out.profile[c->covariate_names[i]] = c->covariate_values[i];
    }
    return out;
}

std::vector<std::string> terms_in(const char* const* terms, size_t n) {
    if (n) require(terms, "terms");
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) {
        require(terms[i], "term");
        out.emplace_back(terms[i]);
    }
    return out;
}

medb::ModelRole role_in(medb_role r) {
    if (r != MEDB_ROLE_OUTCOME && r != MEDB_ROLE_MEDIATOR) medb::fail(medb::ErrorKind::invalid_input, "unknown model role");
    return r == MEDB_ROLE_OUTCOME ? medb::ModelRole::outcome : medb::ModelRole::mediator;
}

void triple_out(const medb::EffectTriple& e, double* out) {
    require(out, "out");
    out[0] = e.nde();
    out[1] = e.nie();
    out[2] = e.te();
}

void bounds_out(const medb::BoundPair& a, const medb::BoundPair& b, const medb::BoundPair& c, double* out) {
    require(out, "out");
    const medb::BoundPair* all[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
        out[2 * i] = all[i]->lower;
        out[2 * i + 1] = all[i]->upper;
    }
}

}  // namespace

extern "C" {

const char* medb_version(void) { return "1.0.0"; }

const char* medb_last_error(void) { return last_error.c_str(); }

const char* medb_status_name(medb_status s) {
    switch (s) {
        case MEDB_OK: return "ok";
        case MEDB_ERR_INVALID_INPUT: return "invalid input";
        case MEDB_ERR_IO: return "i/o error";
        case MEDB_ERR_SINGULAR_DESIGN: return "singular design";
        case MEDB_ERR_NO_CONVERGENCE: return "no convergence";
        case MEDB_ERR_SEPARATION: return "separation";
        case MEDB_ERR_DEGENERATE: return "degenerate";
        case MEDB_ERR_NON_PSD: return "covariance not positive semidefinite";
        case MEDB_ERR_VALIDATION_FAILED: return "validation failed";
        case MEDB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

int medb_exit_code(medb_status s) {
    switch (s) {
        case MEDB_OK: return 0;
        case MEDB_ERR_INVALID_INPUT:
        case MEDB_ERR_IO: return 1;
        case MEDB_ERR_VALIDATION_FAILED: return 3;
        default: return 2;
    }
}

void medb_free_string(char* s) { std::free(s); }

medb_status medb_dataset_read_csv(const char* path, const char* columns_json, medb_dataset** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        medb::ColumnMapping mapping;
        if (columns_json) {
            std::string text = std::string(R"({"columns":)") + columns_json + "}";
            mapping = medb::AnalysisConfig::from_json(text).columns;
        }
        *out = new medb_dataset{medb::Dataset::read_csv(path, mapping)};
    });
}

size_t medb_dataset_rows(const medb_dataset* d) { return d ? d->data.size() : 0; }
size_t medb_dataset_dropped_rows(const medb_dataset* d) { return d ? d->data.dropped_rows() : 0; }
void medb_dataset_free(medb_dataset* d) { delete d; }

medb_status medb_glm_fit(const medb_dataset* data, const char* const* terms, size_t n, medb_role role, medb_glm** out) {
    return guarded([&] {
        require(data, "dataset");
        require(out, "out");
        *out = nullptr;
        const auto r = role_in(role);
        const auto design = medb::DesignSpec::parse(terms_in(terms, n), r).canonical(data->data.mapping());
        *out = new medb_glm{medb::fit_logistic(data->data, design, r)};
    });
}

medb_status medb_glm_create(const char* const* terms, size_t n, medb_role role, const double* coefficients,
                            const double* covariance, medb_glm** out) {
    return guarded([&] {
        require(out, "out");
        require(coefficients, "coefficients");
        require(covariance, "covariance");
        *out = nullptr;
        const auto r = role_in(role);
        auto design = medb::DesignSpec::parse(terms_in(terms, n), r);
        const auto k = static_cast<Eigen::Index>(n);
        Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(coefficients, k);
        Eigen::MatrixXd V = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            covariance, k, k);
        *out = new medb_glm{medb::FittedGlm(std::move(design), b, V)};
    });
}

size_t medb_glm_size(const medb_glm* m) { return m ? m->model.design().size() : 0; }

medb_status medb_glm_coefficients(const medb_glm* m, double* out) {
    return guarded([&] {
        require(m, "model");
        require(out, "out");
        const auto& b = m->model.coefficients();
        for (Eigen::Index i = 0; i < b.size(); ++i) out[i] = b[i];
    });
}

medb_status medb_glm_covariance(const medb_glm* m, double* out) {
    return guarded([&] {
        require(m, "model");
        require(out, "out");
        const auto& V = m->model.covariance();
        for (Eigen::Index r = 0; r < V.rows(); ++r)
            for (Eigen::Index c = 0; c < V.cols(); ++c) out[r * V.cols() + c] = V(r, c);
    });
}

medb_status medb_glm_iterations(const medb_glm* m, int* out) {
    return guarded([&] {
        require(m, "model");
        require(out, "out");
        *out = m->model.report().iterations;
    });
}

medb_status medb_glm_linear_predictor(const medb_glm* m, double exposure, int mediator, const char* const* names,
                                      const double* values, size_t count, double* out) {
    return guarded([&] {
        require(m, "model");
        require(out, "out");
        medb_contrast c{exposure, exposure, names, values, count};
        medb::Point p;
        p.exposure = exposure;
        if (mediator >= 0) p.mediator = mediator;
        p.covariates = contrast_in(&c).profile;
        *out = m->model.linear_predictor(p);
    });
}

void medb_glm_free(medb_glm* m) { delete m; }

medb_status medb_theta(const medb_glm* outcome, const medb_glm* mediator, const medb_contrast* contrast, double theta[6],
                       double sigma[36]) {
    return guarded([&] {
        require(outcome, "outcome model");
        require(mediator, "mediator model");
        require(theta, "theta");
        const auto tb = medb::theta_bundle(outcome->model, mediator->model, contrast_in(contrast));
        for (int i = 0; i < 6; ++i) theta[i] = tb[i];
        if (sigma)
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c) sigma[r * 6 + c] = tb.sigma()(r, c);
    });
}

medb_status medb_point_effects(const double theta[6], double out[3]) {
    return guarded([&] { triple_out(medb::point_effects(medb::ThetaBundle(theta_in(theta))), out); });
}

medb_status medb_psi_effects(const double theta[6], double psi, double out[3]) {
    return guarded([&] { triple_out(medb::psi_effects(medb::ThetaBundle(theta_in(theta)), psi), out); });
}

medb_status medb_p_bounds(const double theta[6], double out[2]) {
    return guarded([&] {
        require(out, "out");
        const auto b = medb::p_bounds(medb::ThetaBundle(theta_in(theta)));
        out[0] = b.lower;
        out[1] = b.upper;
    });
}

medb_status medb_effect_bounds(const double theta[6], double out[6]) {
    return guarded([&] {
        const auto b = medb::effect_bounds(medb::ThetaBundle(theta_in(theta)));
        bounds_out(b.nde, b.nie, b.te, out);
    });
}

medb_status medb_derivative_matrix(const double theta[6], double out[24]) {
    return guarded([&] {
        require(out, "out");
        const auto D = medb::derivative_matrix(medb::ThetaBundle(theta_in(theta)));
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 4; ++c) out[r * 4 + c] = D(r, c);
    });
}

medb_status medb_uncertainty(const double theta[6], const double sigma[36], double alpha, double out[6]) {
    return guarded([&] {
        require(sigma, "sigma");
        medb::Matrix6 S;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) S(r, c) = sigma[r * 6 + c];
        const medb::ThetaBundle tb(theta_in(theta), S);
        const auto ui = medb::uncertainty_intervals(medb::effect_bounds(tb), medb::tau_covariance(tb), alpha);
        bounds_out(ui.nde, ui.nie, ui.te, out);
    });
}

medb_status medb_scm_load(const char* path, medb_scm** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        *out = new medb_scm{medb::load_scm(path)};
    });
}

medb_status medb_scm_bundled(const char* name, medb_scm** out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        *out = nullptr;
        const std::string n = name;
        if (n == "lung-cancer-like") *out = new medb_scm{medb::cun_like_scm()};
        else if (n == "pccwd-counterexample") *out = new medb_scm{medb::pccwd_counterexample_scm()};
        else medb::fail(medb::ErrorKind::invalid_input, "unknown bundled SCM '" + n + "'");
    });
}

medb_status medb_scm_true_effects(const medb_scm* scm, const medb_contrast* contrast, double out[3]) {
    return guarded([&] {
        require(scm, "scm");
        triple_out(medb::true_effects(scm->scm, contrast_in(contrast)), out);
    });
}

medb_status medb_scm_theta(const medb_scm* scm, const medb_contrast* contrast, double theta[6]) {
    return guarded([&] {
        require(scm, "scm");
        require(theta, "theta");
        const auto tb = medb::observational_theta(scm->scm, contrast_in(contrast));
        for (int i = 0; i < 6; ++i) theta[i] = tb[i];
    });
}

medb_status medb_scm_sample(const medb_scm* scm, size_t n, uint64_t seed, medb_dataset** out) {
    return guarded([&] {
        require(scm, "scm");
        require(out, "out");
        *out = nullptr;
        *out = new medb_dataset{medb::sample_dataset(scm->scm, n, seed)};
    });
}

void medb_scm_free(medb_scm* scm) { delete scm; }

medb_status medb_run(const char* command, const char* config_json, const char* base_dir, char** output,
                     char** warnings) {
    if (output) *output = nullptr;
    if (warnings) *warnings = nullptr;
    bool validation_failed = false;
    const auto status = guarded([&] {
        require(command, "command");
        const auto config = medb::AnalysisConfig::from_json(config_json ? config_json : "{}", base_dir ? base_dir : "");
        auto res = medb::run_command(command, config);
        std::string w;
        for (const auto& line : res.warnings) w += line + "\n";
        if (output) *output = dup(res.output);
        if (warnings) *warnings = dup(w);
        validation_failed = !res.validation_passed;
    });
    if (status == MEDB_OK && validation_failed) {
        last_error = "one or more validation checks failed";
        return MEDB_ERR_VALIDATION_FAILED;
    }
    return status;
}

}  // extern "C"
