#pragma once

#include "medbounds/effects.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace medb {

/// |delta_beta| below this is treated as "mediator has no effect on the outcome".
inline constexpr double degeneracy_threshold = 1e-10;

struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;

    double width() const noexcept { return upper - lower; }
    bool contains(double v, double tol = 0.0) const noexcept { return v >= lower - tol && v <= upper + tol; }
    bool contains(const BoundPair& inner, double tol = 0.0) const noexcept {
        return inner.lower >= lower - tol && inner.upper <= upper + tol;
    }
};

/// Log odds-ratio identification bounds. te is the componentwise sum of nde and nie.
struct EffectBounds {
    BoundPair nde;
    BoundPair nie;
    BoundPair te;
    EffectTriple point_at_psi0;
    Warnings warnings;
};

struct SensitivityCurve {
    std::vector<double> psi_grid;
    std::vector<EffectTriple> effects;
    std::vector<double> p_values;
};

/// delta_beta(at) = r_beta(at, 1) - r_beta(at, 0): the mediator's log-OR effect on the outcome.
double delta_beta(const ThetaBundle& theta, Level at, Warnings* warnings = nullptr);

inline bool is_degenerate(double delta) { return std::abs(delta) < degeneracy_threshold; }

/// The shifted g_y under logit P(Y(a,m)=1 | M(a)=m, c) = psi + r_beta(a,m).
double g_tilde(const ThetaBundle& theta, double psi, int y, LevelPair pair = LevelPair::active_reference);

/// log[(1 + e^{g~1}) / (1 + e^{g~0})] for the pair.
double log_odds_factor(const ThetaBundle& theta, double psi, LevelPair pair);

/// NDE and NIE for a given shift psi (shared by every level pair), TE their sum.
EffectTriple psi_effects(const ThetaBundle& theta, double psi);

/// Sensitivity parameter p = P(M(b)=0 | Y(a,M(b))=0, c) = 1 / (1 + e^{g~0}).
double p_of_psi(const ThetaBundle& theta, double psi, LevelPair pair = LevelPair::active_reference);

/// Admissible (open) range of p over psi in R. Throws Error(degenerate) when delta_beta ~ 0.
BoundPair p_bounds(const ThetaBundle& theta, LevelPair pair = LevelPair::active_reference);

/// Odds-scale (l, u) enclosing (1 + e^{g~1}) / (1 + e^{g~0}) for every psi.
/// Degenerate delta_beta gives (1, 1) and a warning.
BoundPair pair_bounds(const ThetaBundle& theta, LevelPair pair, Warnings* warnings = nullptr);

/// (log l, log u), evaluated without forming the odds.
BoundPair log_pair_bounds(const ThetaBundle& theta, LevelPair pair);

/// Closed-form identification bounds for NDE, NIE and TE on the log odds-ratio scale.
EffectBounds effect_bounds(const ThetaBundle& theta);

SensitivityCurve sensitivity_curve(const ThetaBundle& theta, std::span<const double> psi_grid);

}  // namespace medb
