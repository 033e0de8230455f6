#include "fixtures.hpp"

#include "medbounds/numeric.hpp"
#include "medbounds/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace medb;

TEST_CASE("normal quantile") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-15));
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.3613409024040557).epsilon(1e-13));
    CHECK(std::isnan(normal_quantile(0.0)));
    CHECK(std::isnan(normal_quantile(1.0)));
    for (double p : {0.01, 0.2, 0.7, 0.999}) CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-14));
}

TEST_CASE("derivative matrix on published estimates") {
    // tests/oracles/derive_golden.py (mpmath numerical differentiation)
    const double expected[6][4] = {
        {0.94583329951876394, 0.58904043405866514, 0.30939863804369822, -0.52515755166751337},
        {-0.58904043405866514, -0.94583329951876394, 0.0, 0.0},
        {0.054166700481236059, 0.41095956594133486, -0.30939863804369822, 0.52515755166751337},
        {-0.41095956594133486, -0.054166700481236059, 0.0, 0.0},
        {0.0, 0.0, 0.18136378660939081, 0.29639953764172198},
        {-0.13194903927165167, 0.13194903927165167, -0.24437095236587524, -0.11242191309422356},
    };
    const auto D = derivative_matrix(ThetaBundle(fixtures::published_theta()));
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 4; ++c) CHECK(D(r, c) == doctest::Approx(expected[r][c]).epsilon(1e-12));
    CHECK(D(4, 0) == 0.0);
    CHECK(D(4, 1) == 0.0);
}

TEST_CASE("derivative matrix agrees with central differences") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 40; ++k) {
        const auto tb = random_theta(rng);
        CHECK((derivative_matrix(tb) - fd_derivative_matrix(tb)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("tau covariance and intervals on published estimates") {
    const auto tb = fixtures::published_bundle();
    const auto v = tau_covariance(tb);
    const double v0[4][4] = {
        {0.038267462690909665, 0.012932537309090332, 0.0094677323857720964, -0.01841320054174288},
        {0.012932537309090332, 0.038267462690909665, -0.0094677323857720964, 0.01841320054174288},
        {0.0094677323857720964, -0.0094677323857720964, 0.0077111155725860179, -0.01348362938707984},
        {-0.01841320054174288, 0.01841320054174288, -0.01348362938707984, 0.027336248216529848},
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(v.v0(r, c) == doctest::Approx(v0[r][c]).epsilon(1e-10));
    const auto ui = uncertainty_intervals(effect_bounds(tb), v, 0.05);
    CHECK(ui.nde.lower == doctest::Approx(0.19609685551431525).epsilon(1e-10));
    CHECK(ui.nde.upper == doctest::Approx(1.4039031444856844).epsilon(1e-10));
    CHECK(ui.nie.lower == doctest::Approx(-0.29366472892341773).epsilon(1e-10));
    CHECK(ui.nie.upper == doctest::Approx(0.73083365679793284).epsilon(1e-10));
    CHECK(ui.te.lower == doctest::Approx(-0.04141230877904779).epsilon(1e-10));
    CHECK(ui.te.upper == doctest::Approx(2.0545538183666847).epsilon(1e-10));
}

TEST_CASE("intervals contain the bounds and widen as alpha shrinks") {
    const auto tb = fixtures::published_bundle();
    const auto b = effect_bounds(tb);
    const auto v = tau_covariance(tb);
    const auto wide = uncertainty_intervals(b, v, 0.01);
    const auto narrow = uncertainty_intervals(b, v, 0.2);
    CHECK(narrow.nde.contains(b.nde));
    CHECK(narrow.nie.contains(b.nie));
    CHECK(narrow.te.contains(b.te));
    CHECK(wide.nde.contains(narrow.nde));
    CHECK(wide.te.contains(narrow.te));
    CHECK(fixtures::error_kind([&] { uncertainty_intervals(b, v, 0.0); }) == ErrorKind::invalid_input);
    CHECK(fixtures::error_kind([&] { uncertainty_intervals(b, v, 1.0); }) == ErrorKind::invalid_input);
}

TEST_CASE("zero covariance gives intervals equal to the bounds") {
    const ThetaBundle tb(fixtures::published_theta());
    const auto b = effect_bounds(tb);
    const auto ui = uncertainty_intervals(b, tau_covariance(tb), 0.05);
    CHECK(ui.nde.lower == b.nde.lower);
    CHECK(ui.te.upper == b.te.upper);
}

TEST_CASE("indefinite covariance is rejected") {
    Matrix6 s = Matrix6::Identity();
    s(0, 0) = -0.5;
    const ThetaBundle tb(fixtures::published_theta(), s);
    CHECK(fixtures::error_kind([&] { tau_covariance(tb); }) == ErrorKind::non_psd);
}

TEST_CASE("TE variances combine the NDE and NIE entries") {
    TauBounds tb;
    tb.v0 << 1.0, 0.1, 0.2, 0.3,  //
        0.1, 2.0, 0.4, 0.5,       //
        0.2, 0.4, 3.0, 0.6,       //
        0.3, 0.5, 0.6, 4.0;
    const auto v = te_bound_variances(tb);
    CHECK(v.lower == doctest::Approx(1.0 + 3.0 + 0.4));
    CHECK(v.upper == doctest::Approx(2.0 + 4.0 + 1.0));
    tb.v0(0, 2) = tb.v0(2, 0) = -3.0;
    Warnings w;
    CHECK(te_bound_variances(tb, &w).lower == 0.0);
    CHECK(w.size() == 1);
}

TEST_CASE("delta method agrees with a parametric bootstrap") {
    const auto tb = fixtures::published_bundle();
    const auto v = tau_covariance(tb);
    const Eigen::MatrixXd draws = parametric_bootstrap_tau(tb, 1000, 99);
    const Eigen::RowVectorXd mean = draws.colwise().mean();
    for (int k = 0; k < 4; ++k) {
        const double sd = std::sqrt((draws.col(k).array() - mean[k]).square().sum() / (draws.rows() - 1));
        CHECK(sd == doctest::Approx(std::sqrt(v.v0(k, k))).epsilon(0.15));
    }
}
