#include "medbounds/effects.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"

namespace medb {

ThetaBundle::ThetaBundle(const Vector6& theta, const Matrix6& sigma) : theta_(theta), sigma_(sigma) {
    if (!theta_.allFinite() || !sigma_.allFinite()) fail(ErrorKind::invalid_input, "theta bundle has non-finite entries");
    const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
    if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        fail(ErrorKind::invalid_input, "theta covariance is not symmetric");
}

double ThetaBundle::outcome(Level at, int mediator) const {
    if (at == Level::active) return theta_[mediator ? beta_x1 : beta_x0];
    return theta_[mediator ? beta_xs1 : beta_xs0];
}

double ThetaBundle::mediator(Level at) const { return theta_[at == Level::active ? gamma_x : gamma_xs]; }

Point contrast_point(const ContrastSpec& contrast, Level at, std::optional<int> mediator) {
    Point p;
    p.exposure = at == Level::active ? contrast.x : contrast.x_star;
    if (mediator) p.mediator = *mediator;
    p.covariates = contrast.profile;
    return p;
}

Eigen::MatrixXd theta_jacobian(const FittedGlm& outcome, const FittedGlm& mediator, const ContrastSpec& contrast) {
    const auto pb = static_cast<Eigen::Index>(outcome.design().size());
    const auto pg = static_cast<Eigen::Index>(mediator.design().size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(6, pb + pg);
    A.block(0, 0, 1, pb) = outcome.design_row(contrast_point(contrast, Level::active, 0)).transpose();
    A.block(1, 0, 1, pb) = outcome.design_row(contrast_point(contrast, Level::reference, 0)).transpose();
    A.block(2, 0, 1, pb) = outcome.design_row(contrast_point(contrast, Level::active, 1)).transpose();
    A.block(3, 0, 1, pb) = outcome.design_row(contrast_point(contrast, Level::reference, 1)).transpose();
    A.block(4, pb, 1, pg) = mediator.design_row(contrast_point(contrast, Level::active, std::nullopt)).transpose();
    A.block(5, pb, 1, pg) = mediator.design_row(contrast_point(contrast, Level::reference, std::nullopt)).transpose();
    return A;
}

ThetaBundle theta_bundle(const FittedGlm& outcome, const FittedGlm& mediator, const ContrastSpec& contrast) {
    if (outcome.design().role() != ModelRole::outcome || mediator.design().role() != ModelRole::mediator)
        fail(ErrorKind::invalid_input, "theta_bundle needs an outcome model and a mediator model");
    const Eigen::MatrixXd A = theta_jacobian(outcome, mediator, contrast);
    const auto pb = outcome.coefficients().size();
    const auto pg = mediator.coefficients().size();

    Eigen::VectorXd coef(pb + pg);
    coef << outcome.coefficients(), mediator.coefficients();
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(pb + pg, pb + pg);
    cov.topLeftCorner(pb, pb) = outcome.covariance();
    cov.bottomRightCorner(pg, pg) = mediator.covariance();

    const Vector6 theta = A * coef;
    Matrix6 sigma = A * cov * A.transpose();
    sigma = (0.5 * (sigma + sigma.transpose())).eval();
    return ThetaBundle(theta, sigma);
}

namespace {

Level outcome_level(LevelPair pair) {
    return pair == LevelPair::reference_reference ? Level::reference : Level::active;
}

Level mediator_level(LevelPair pair) { return pair == LevelPair::active_active ? Level::active : Level::reference; }

}  // namespace

double g_y(const ThetaBundle& theta, int y, LevelPair pair) {
    const Level a = outcome_level(pair);
    const double r0 = theta.outcome(a, 0);
    const double r1 = theta.outcome(a, 1);
    return y * (r1 - r0) + softplus(r0) - softplus(r1) + theta.mediator(mediator_level(pair));
}

double nem_logit(const ThetaBundle& theta, LevelPair pair) {
    return theta.outcome(outcome_level(pair), 0) + softplus(g_y(theta, 1, pair)) - softplus(g_y(theta, 0, pair));
}

EffectTriple point_effects(const ThetaBundle& theta) {
    const double cross = nem_logit(theta, LevelPair::active_reference);
    const double nde = cross - nem_logit(theta, LevelPair::reference_reference);
    const double nie = nem_logit(theta, LevelPair::active_active) - cross;
    return EffectTriple(nde, nie);
}

}  // namespace medb
