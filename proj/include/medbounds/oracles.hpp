#pragma once

#include "medbounds/bounds.hpp"
#include "medbounds/scm.hpp"
#include "medbounds/uncertainty.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace medb {

/// Componentwise min/max of effects over a psi grid.
struct SweepBounds {
    BoundPair nde;
    BoundPair nie;
    BoundPair te;
};

/// Brute-force min/max of psi_effects over `points` equally spaced psi values in
/// [lo, hi], one psi shared by every level pair.
SweepBounds psi_sweep_bounds(const ThetaBundle& theta, double lo, double hi, std::size_t points);

/// Brute-force bounds with an independent psi for each level pair: NDE and NIE
/// extremes from the per-pair extremes of log[(1+e^{g~1})/(1+e^{g~0})]; TE as
/// their componentwise sum.
SweepBounds pairwise_sweep_bounds(const ThetaBundle& theta, double lo, double hi, std::size_t points);

/// logit of sum_m P(Y=1 | a, m) P(M=m | b) with the probabilities taken from theta.
double mediation_formula_logit(const ThetaBundle& theta, LevelPair pair);

/// Central finite differences of tau (the closed-form bound vector) w.r.t. theta.
Matrix64 fd_derivative_matrix(const ThetaBundle& theta, double h = 1e-6);

/// Random predictors with |delta_beta| >= 0.05 at both levels.
ThetaBundle random_theta(std::mt19937_64& rng);

/// A random SCM without unmeasured confounding (U1 moves only X, U2 only M),
/// together with a contrast on its grid and support.
struct ScmCase {
    StructuralModel scm;
    ContrastSpec contrast;
};
ScmCase random_unconfounded_case(std::mt19937_64& rng);

/// The four cross-world probabilities constrained by cross-world independence,
/// each compared with the single-world reference P(Y(x,m)=1 | M(x)=m, c).
struct CrossWorldReport {
    double reference[2]{};             // by m
    double single_world_flip[2]{};     // P(Y(x,m)=1 | M(x)=1-m)
    double marginal[2]{};              // P(Y(x,m)=1)
    double cross_world_same[2]{};      // P(Y(x,m)=1 | M(x*)=m)
    double cross_world_flip[2]{};      // P(Y(x,m)=1 | M(x*)=1-m)

    bool pccwd_holds(double tol = 1e-12) const;
    bool cwi_holds(double tol = 1e-12) const;
};
CrossWorldReport cross_world_report(const StructuralModel& scm, const ContrastSpec& contrast);

/// Standard normal draws from a seeded stream (Box-Muller on 53-bit uniforms).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
    double operator()();

private:
    double uniform();
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Draws of tau from resampling theta ~ N(theta_hat, Sigma) exactly (Sigma via
/// symmetric square root). Returns replicates x 4.
Eigen::MatrixXd parametric_bootstrap_tau(const ThetaBundle& theta, int replicates, std::uint64_t seed);

struct CoverageSetup {
    StructuralModel scm;
    ContrastSpec contrast;
    std::vector<std::string> outcome_design;
    std::vector<std::string> mediator_design;
    std::size_t n = 5000;
    int replicates = 500;
    double alpha = 0.05;
    std::uint64_t seed = 1;
};

struct CoverageResult {
    EffectTriple truth;
    int replicates = 0;
    int fit_failures = 0;
    int covered_nde = 0;
    int covered_nie = 0;
    int covered_te = 0;
};

/// Repeated sample / fit / interval construction; a failed fit counts as not covering.
CoverageResult coverage_simulation(const CoverageSetup& setup);

/// The bundled lung-cancer-like SCM with its outcome/mediator designs and a
/// supported male profile contrast (x=50, x*=10).
CoverageSetup default_coverage_setup();

}  // namespace medb
