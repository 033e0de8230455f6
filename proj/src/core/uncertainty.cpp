#include "medbounds/uncertainty.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"

#include <cmath>

namespace medb {

Vector4 tau_vector(const ThetaBundle& theta) {
    const auto b = effect_bounds(theta);
    Vector4 tau;
    tau << b.nde.lower, b.nde.upper, b.nie.lower, b.nie.upper;
    return tau;
}

Matrix64 derivative_matrix(const ThetaBundle& theta, Warnings* warnings) {
    const double dx = delta_beta(theta, Level::active, warnings);
    const double ds = delta_beta(theta, Level::reference, warnings);
    const double gx = theta[ThetaBundle::gamma_x];
    const double gs = theta[ThetaBundle::gamma_xs];

    Matrix64 D = Matrix64::Zero();

    // log l_NDE
    D(0, 0) = 1.0 - expit(gs - dx);
    D(1, 0) = expit(gs + ds) - 1.0;
    D(2, 0) = expit(gs - dx);
    D(3, 0) = -expit(gs + ds);
    D(5, 0) = 2.0 * expit(gs) - expit(gs - dx) - expit(gs + ds);

    // log u_NDE
    D(0, 1) = 1.0 - expit(gs + dx);
    D(1, 1) = expit(gs - ds) - 1.0;
    D(2, 1) = expit(gs + dx);
    D(3, 1) = -expit(gs - ds);
    D(5, 1) = -2.0 * expit(gs) + expit(gs + dx) + expit(gs - ds);

    // log l_NIE
    D(0, 2) = expit(gs + dx) - expit(gx - dx);
    D(2, 2) = expit(gx - dx) - expit(gs + dx);
    D(4, 2) = expit(gx) - expit(gx - dx);
    D(5, 2) = expit(gs) - expit(gs + dx);

    // log u_NIE
    D(0, 3) = expit(gs - dx) - expit(gx + dx);
    D(2, 3) = expit(gx + dx) - expit(gs - dx);
    D(4, 3) = expit(gx + dx) - expit(gx);
    D(5, 3) = expit(gs - dx) - expit(gs);
    return D;
}

TauBounds tau_covariance(const ThetaBundle& theta) {
    const Matrix6& sigma = theta.sigma();
    Eigen::SelfAdjointEigenSolver<Matrix6> eig(sigma, Eigen::EigenvaluesOnly);
    const double top = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    if (eig.eigenvalues().minCoeff() < -1e-10 * top)
        fail(ErrorKind::non_psd, "theta covariance is not positive semidefinite (min eigenvalue " +
                                     std::to_string(eig.eigenvalues().minCoeff()) + ")");
    TauBounds tb;
    const Matrix64 D = derivative_matrix(theta, &tb.warnings);
    tb.tau = tau_vector(theta);
    tb.v0 = D.transpose() * sigma * D;
    tb.v0 = (0.5 * (tb.v0 + tb.v0.transpose())).eval();
    return tb;
}

TeVariances te_bound_variances(const TauBounds& tb, Warnings* warnings) {
    TeVariances v{tb.v0(0, 0) + tb.v0(2, 2) + 2.0 * tb.v0(0, 2), tb.v0(1, 1) + tb.v0(3, 3) + 2.0 * tb.v0(1, 3)};
    for (double* x : {&v.lower, &v.upper}) {
        if (*x < 0.0) {
            if (warnings) warnings->push_back("negative TE bound variance from round-off clipped to 0");
            *x = 0.0;
        }
    }
    return v;
}

UncertaintyIntervals uncertainty_intervals(const EffectBounds& bounds, const TauBounds& tb, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::invalid_input, "alpha must lie strictly between 0 and 1");
    UncertaintyIntervals ui;
    ui.alpha = alpha;
    ui.warnings = tb.warnings;
    const double z = normal_quantile(1.0 - alpha / 2.0);
    auto se = [&](int i) { return std::sqrt(std::max(0.0, tb.v0(i, i))); };
    const auto te_var = te_bound_variances(tb, &ui.warnings);
    ui.nde = {bounds.nde.lower - z * se(0), bounds.nde.upper + z * se(1)};
    ui.nie = {bounds.nie.lower - z * se(2), bounds.nie.upper + z * se(3)};
    ui.te = {bounds.te.lower - z * std::sqrt(te_var.lower), bounds.te.upper + z * std::sqrt(te_var.upper)};
    return ui;
}

}  // namespace medb
