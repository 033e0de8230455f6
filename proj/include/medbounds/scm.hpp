#pragma once

#include "medbounds/dataset.hpp"
#include "medbounds/effects.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace medb {

struct CovariateProfile {
    std::vector<double> values;  // ordered as StructuralModel::covariate_names
    double prob = 0.0;
};

/// Fully discrete structural causal model over (C, U1, U2, X, M, Y).
///
/// U1 (exposure-outcome) and U2 (mediator-outcome) are independent of each
/// other and of C. Each of M and Y has one unit-level uniform response variable
/// shared across interventions: M(x) = 1{V_M < P(M=1|x,c,u2)} and
/// Y(x,m) = 1{V_Y < P(Y=1|x,m,c,u1,u2)}.
struct StructuralModel {
    std::vector<std::string> covariate_names;
    std::vector<CovariateProfile> c_support;
    std::vector<double> u1_probs{1.0};
    std::vector<double> u2_probs{1.0};
    std::vector<double> exposure_grid;

    /// x_prob[c][u1][k] = P(X = exposure_grid[k] | c, u1)
    std::vector<std::vector<std::vector<double>>> x_prob;
    /// m_prob[k][c][u2] = P(M = 1 | x_k, c, u2)
    std::vector<std::vector<std::vector<double>>> m_prob;
    /// y_prob[k][m][c][u1][u2] = P(Y = 1 | x_k, m, c, u1, u2)
    std::vector<std::vector<std::vector<std::vector<std::vector<double>>>>> y_prob;

    /// Checks shapes, probability ranges, and normalisation (1e-12).
    void validate() const;

    std::size_t exposure_index(double x) const;
    std::size_t profile_index(const std::map<std::string, double, std::less<>>& profile) const;
    std::map<std::string, double, std::less<>> profile(std::size_t c) const;
};

/// Exact counterfactual law for one contrast. Index 0 is the active level x,
/// index 1 the reference level x*.
struct CounterfactualLaw {
    double y_cross[2][2]{};            // P(Y(a, M(b)) = 1 | c)
    double m[2]{};                     // P(M(a) = 1 | c)
    double m_joint[2][2]{};            // P(M(x) = i, M(x*) = j | c)
    double y_fixed[2][2]{};            // P(Y(a, m) = 1 | c)
    double y_given_m[2][2][2][2]{};    // P(Y(a, m) = 1 | M(b) = m', c) as [a][m][b][m']
    double y_total[2]{};               // P(Y(a) = 1 | c) by forward intervention on X
};

CounterfactualLaw enumerate_counterfactuals(const StructuralModel& scm, const ContrastSpec& contrast);

/// Log odds-ratio effects from the exact counterfactual law.
EffectTriple true_effects(const StructuralModel& scm, const ContrastSpec& contrast);

/// Observational conditionals, latents marginalised.
double observed_p_mediator(const StructuralModel& scm, std::size_t k, std::size_t c);
double observed_p_outcome(const StructuralModel& scm, std::size_t k, int m, std::size_t c);

/// Population logits of the observational law at the six theta points, sigma = 0.
ThetaBundle observational_theta(const StructuralModel& scm, const ContrastSpec& contrast);

/// sum_m P(Y=1 | a, m, c) P(M=m | b, c) on the SCM's observational law.
double mediation_formula(const StructuralModel& scm, const ContrastSpec& contrast, LevelPair pair);

/// n i.i.d. draws, deterministic in (scm, n, seed). Columns Y, M, X, covariates.
Dataset sample_dataset(const StructuralModel& scm, std::size_t n, std::uint64_t seed);

/// Independent stream seed derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

StructuralModel parse_scm(std::string_view json_text);
StructuralModel load_scm(const std::string& path);
std::string scm_to_json(const StructuralModel& scm);

/// Synthetic stand-in for the lung-cancer cohort: logistic mediator/outcome
/// mechanisms with the published coefficients, Gender P(1)=0.725, a 7-point BMI
/// grid with mean 27.564 and SD 4.443, pack-years on 10, 20, ..., 170.
/// No latent confounding, so cross-world independence holds.
StructuralModel cun_like_scm();

/// Hand-built SCM on which the partially constant cross-world condition holds for
/// the contrast (x=1, x*=0) while full cross-world independence fails.
StructuralModel pccwd_counterexample_scm();

}  // namespace medb
