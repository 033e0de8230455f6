#include "medbounds/bounds.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"

#include <cmath>
#include <sstream>

namespace medb {

namespace {

Level outcome_level(LevelPair pair) {
    return pair == LevelPair::reference_reference ? Level::reference : Level::active;
}

Level mediator_level(LevelPair pair) { return pair == LevelPair::active_active ? Level::active : Level::reference; }

const char* level_name(Level at) { return at == Level::active ? "x" : "x*"; }

}  // namespace

double delta_beta(const ThetaBundle& theta, Level at, Warnings* warnings) {
    const double d = theta.outcome(at, 1) - theta.outcome(at, 0);
    if (warnings && is_degenerate(d))
        warnings->push_back(std::string("degenerate mediator effect: delta_beta(") + level_name(at) + ") ~ 0");
    return d;
}

double g_tilde(const ThetaBundle& theta, double psi, int y, LevelPair pair) {
    const Level a = outcome_level(pair);
    const double r0 = theta.outcome(a, 0);
    const double r1 = theta.outcome(a, 1);
    return y * (r1 - r0) + softplus(psi + r0) - softplus(psi + r1) + theta.mediator(mediator_level(pair));
}

double log_odds_factor(const ThetaBundle& theta, double psi, LevelPair pair) {
    const double g0 = g_tilde(theta, psi, 0, pair);
    return softplus(g0 + delta_beta(theta, outcome_level(pair))) - softplus(g0);
}

EffectTriple psi_effects(const ThetaBundle& theta, double psi) {
    const double cross = log_odds_factor(theta, psi, LevelPair::active_reference);
    const double nde = theta[ThetaBundle::beta_x0] - theta[ThetaBundle::beta_xs0] + cross -
                       log_odds_factor(theta, psi, LevelPair::reference_reference);
    const double nie = log_odds_factor(theta, psi, LevelPair::active_active) - cross;
    return EffectTriple(nde, nie);
}

double p_of_psi(const ThetaBundle& theta, double psi, LevelPair pair) {
    return expit(-g_tilde(theta, psi, 0, pair));
}

BoundPair p_bounds(const ThetaBundle& theta, LevelPair pair) {
    const double d = delta_beta(theta, outcome_level(pair));
    if (is_degenerate(d))
        fail(ErrorKind::degenerate, "sensitivity parameter range undefined: delta_beta ~ 0 (mediator has no effect)");
    const double rg = theta.mediator(mediator_level(pair));
    const double at_minus_inf = expit(-rg);     // 1 / (1 + e^{r_gamma})
    const double at_plus_inf = expit(d - rg);   // e^delta / (e^delta + e^{r_gamma})
    return d > 0.0 ? BoundPair{at_minus_inf, at_plus_inf} : BoundPair{at_plus_inf, at_minus_inf};
}

BoundPair log_pair_bounds(const ThetaBundle& theta, LevelPair pair) {
    const double d = theta.outcome(outcome_level(pair), 1) - theta.outcome(outcome_level(pair), 0);
    const double rg = theta.mediator(mediator_level(pair));
    // l = e^d (1 + e^rg) / (e^d + e^rg),  u = (1 + e^d e^rg) / (1 + e^rg); l <= u for either sign of d.
    return {softplus(rg) - softplus(rg - d), softplus(rg + d) - softplus(rg)};
}

BoundPair pair_bounds(const ThetaBundle& theta, LevelPair pair, Warnings* warnings) {
    delta_beta(theta, outcome_level(pair), warnings);
    const auto lb = log_pair_bounds(theta, pair);
    return {std::exp(lb.lower), std::exp(lb.upper)};
}

EffectBounds effect_bounds(const ThetaBundle& theta) {
    EffectBounds out;
    delta_beta(theta, Level::active, &out.warnings);
    delta_beta(theta, Level::reference, &out.warnings);

    const auto cross = log_pair_bounds(theta, LevelPair::active_reference);
    const auto active = log_pair_bounds(theta, LevelPair::active_active);
    const auto reference = log_pair_bounds(theta, LevelPair::reference_reference);
    const double shift = theta[ThetaBundle::beta_x0] - theta[ThetaBundle::beta_xs0];

    out.nde = {shift + cross.lower - reference.upper, shift + cross.upper - reference.lower};
    out.nie = {active.lower - cross.upper, active.upper - cross.lower};
    out.te = {out.nde.lower + out.nie.lower, out.nde.upper + out.nie.upper};
    out.point_at_psi0 = psi_effects(theta, 0.0);
    return out;
}

SensitivityCurve sensitivity_curve(const ThetaBundle& theta, std::span<const double> psi_grid) {
    SensitivityCurve curve;
    curve.psi_grid.assign(psi_grid.begin(), psi_grid.end());
    for (double psi : psi_grid) {
        curve.effects.push_back(psi_effects(theta, psi));
        curve.p_values.push_back(p_of_psi(theta, psi));
    }
    return curve;
}

}  // namespace medb
