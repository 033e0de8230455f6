#pragma once

#include "medbounds/uncertainty.hpp"
#include "medbounds/validation.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace medb {

struct ProfileSpec {
    std::string name;
    std::map<std::string, double, std::less<>> values;
};

/// Declarative batch configuration (JSON; see docs/config.md).
struct AnalysisConfig {
    std::string data_path;
    ColumnMapping columns;
    bool columns_given = false;
    std::vector<std::string> outcome_design;   // empty: 1, X, M, covariates
    std::vector<std::string> mediator_design;  // empty: 1, X, covariates
    std::map<std::string, LookupTable> tables;
    std::string models_path;                   // saved model file; skips fitting
    std::vector<double> x_values;              // empty: 21 points over the exposure support
    double x_star = 10.0;
    std::vector<ProfileSpec> profiles;         // empty: per-gender BMI means or the empty profile
    double alpha = 0.05;
    std::string format = "table";
    std::uint64_t seed = 20240611;
    std::string scm_path;                      // empty: bundled lung-cancer-like SCM
    std::size_t simulate_n = 3270;
    ValidationOptions validation;

    /// Relative paths resolve against `base_dir`.
    static AnalysisConfig from_json(std::string_view text, const std::string& base_dir = {});
    void check() const;
};

/// Both fitted models plus what is needed to evaluate them again.
struct ModelPair {
    ColumnMapping columns;
    std::map<std::string, LookupTable> tables;
    std::vector<std::string> outcome_terms;
    std::vector<std::string> mediator_terms;
    FittedGlm outcome;
    FittedGlm mediator;
    double exposure_min = 0.0;
    double exposure_max = 0.0;
    std::size_t observations = 0;
};

ModelPair fit_models(const Dataset& data, const AnalysisConfig& config);
ModelPair parse_models(std::string_view json_text);
ModelPair load_models(const std::string& path);
std::string models_to_json(const ModelPair& models);

struct ContrastRow {
    std::string profile;
    double x = 0.0;
    double x_star = 0.0;
    ThetaBundle theta;
    EffectTriple point;
    EffectBounds bounds;
    UncertaintyIntervals intervals;
    BoundPair pair[3];      // active_reference, active_active, reference_reference (odds-factor scale)
    BoundPair p_range;      // for (x, x*); NaN when delta_beta(x) is degenerate
};

/// Rows in profile order, then in the order of the x list.
std::vector<ContrastRow> evaluate_contrasts(const ModelPair& models, const AnalysisConfig& config, Warnings* warnings);

/// Profiles to use when none are configured.
std::vector<ProfileSpec> default_profiles(const ColumnMapping& columns);

struct CommandResult {
    std::string output;
    Warnings warnings;
    bool validation_passed = true;
};

/// fit | effects | bounds | curve | simulate | validate
CommandResult run_command(std::string_view command, const AnalysisConfig& config);

}  // namespace medb
