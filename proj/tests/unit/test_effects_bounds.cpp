#include "fixtures.hpp"

#include "medbounds/numeric.hpp"
#include "medbounds/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace medb;

namespace {
const ThetaBundle kPublished{fixtures::published_theta()};
}

TEST_CASE("sensitivity-parameter range on published estimates") {
    const auto p = p_bounds(kPublished);
    // tests/oracles/derive_golden.py
    CHECK(p.lower == doctest::Approx(0.83341138642454038).epsilon(1e-12));
    CHECK(p.upper == doctest::Approx(0.94583329951876394).epsilon(1e-12));
    CHECK(p.lower == doctest::Approx(0.83341).epsilon(5e-4));
    CHECK(p.upper == doctest::Approx(0.94583).epsilon(5e-4));
    const double p0 = p_of_psi(kPublished, 0.0);
    CHECK(p.contains(p0));
    CHECK(p0 == doctest::Approx(0.83855).epsilon(1e-5));
}

TEST_CASE("pair bounds on published estimates") {
    const auto b = pair_bounds(kPublished, LevelPair::active_reference);
    CHECK(b.lower == doctest::Approx(1.1348936610723912).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(1.414862780610978).epsilon(1e-12));
    CHECK(b.lower == doctest::Approx(1.13491).epsilon(5e-4));
    CHECK(b.upper == doctest::Approx(1.41492).epsilon(5e-4));
}

TEST_CASE("effect bounds on published estimates") {
    const auto b = effect_bounds(kPublished);
    CHECK(b.nde.lower == doctest::Approx(0.57950640429939481).epsilon(1e-12));
    CHECK(b.nde.upper == doctest::Approx(1.0204935957006048).epsilon(1e-12));
    CHECK(b.nie.lower == doctest::Approx(-0.12155449409206787).epsilon(1e-12));
    CHECK(b.nie.upper == doctest::Approx(0.40677953811391942).epsilon(1e-12));
    CHECK(b.te.lower == doctest::Approx(0.45795191020732695).epsilon(1e-12));
    CHECK(b.te.upper == doctest::Approx(1.4272731338145243).epsilon(1e-12));
    CHECK(b.warnings.empty());
    // the psi = 0 point lies inside
    CHECK(b.nde.contains(b.point_at_psi0.nde()));
    CHECK(b.nie.contains(b.point_at_psi0.nie()));
    CHECK(b.te.contains(b.point_at_psi0.te()));
}

TEST_CASE("per-pair sweep reproduces the closed forms") {
    const auto b = effect_bounds(kPublished);
    const auto s = pairwise_sweep_bounds(kPublished, -60.0, 60.0, 4001);
    CHECK(std::abs(s.nde.lower - b.nde.lower) < 1e-9);
    CHECK(std::abs(s.nde.upper - b.nde.upper) < 1e-9);
    CHECK(std::abs(s.nie.lower - b.nie.lower) < 1e-9);
    CHECK(std::abs(s.nie.upper - b.nie.upper) < 1e-9);
    CHECK(std::abs(s.te.lower - b.te.lower) < 1e-9);
    CHECK(std::abs(s.te.upper - b.te.upper) < 1e-9);
}

TEST_CASE("a single shared psi traces a strictly narrower range") {
    const auto b = effect_bounds(kPublished);
    const auto s = psi_sweep_bounds(kPublished, -30.0, 30.0, 60001);
    CHECK(b.nde.contains(s.nde));
    CHECK(b.nie.contains(s.nie));
    CHECK(s.nde.lower == doctest::Approx(0.7565).epsilon(1e-3));
    CHECK(s.nde.upper == doctest::Approx(0.8000).epsilon(1e-3));
    CHECK(s.nie.lower == doctest::Approx(0.0989).epsilon(1e-3));
    CHECK(s.nie.upper == doctest::Approx(0.1863).epsilon(1e-3));
}

TEST_CASE("bounds straddle zero at x = x*") {
    Vector6 t;
    t << -4.962, -4.962, -3.712, -3.712, -1.610, -1.610;
    const ThetaBundle tb(t);
    const auto b = effect_bounds(tb);
    const auto e = point_effects(tb);
    CHECK(e.nde() == 0.0);
    CHECK(b.nde.lower < 0.0);
    CHECK(b.nde.upper > 0.0);
    CHECK(b.nie.lower < 0.0);
    CHECK(b.nie.upper > 0.0);
    CHECK(b.te.lower == doctest::Approx(-b.te.upper).epsilon(1e-12));
}

TEST_CASE("negative mediator effect keeps lower <= upper") {
    Vector6 t;
    t << -1.0, -1.5, -2.5, -2.2, 0.4, -0.3;
    const ThetaBundle tb(t);
    const auto pb = p_bounds(tb);
    CHECK(pb.lower < pb.upper);
    for (auto pair : {LevelPair::active_reference, LevelPair::active_active, LevelPair::reference_reference}) {
        const auto b = pair_bounds(tb, pair);
        CHECK(b.lower <= b.upper);
    }
    const auto b = effect_bounds(tb);
    CHECK(b.nde.lower <= b.nde.upper);
    CHECK(b.nie.lower <= b.nie.upper);
}

TEST_CASE("degenerate mediator effect") {
    Vector6 t;
    t << -2.0, -2.5, -2.0, -2.0, 0.1, 0.2;
    const ThetaBundle tb(t);
    CHECK(fixtures::error_kind([&] { p_bounds(tb); }) == ErrorKind::degenerate);
    const auto b = effect_bounds(tb);
    CHECK(b.warnings.size() == 1);
    CHECK(b.warnings[0].find("delta_beta(x)") != std::string::npos);
    // with delta = 0 at x the pair bounds collapse to 1
    const auto pb = pair_bounds(tb, LevelPair::active_active);
    CHECK(pb.lower == doctest::Approx(1.0));
    CHECK(pb.upper == doctest::Approx(1.0));
}

TEST_CASE("straight line, monotonicity and the psi family") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 50; ++k) {
        const auto tb = random_theta(rng);
        const auto b = effect_bounds(tb);
        double previous = std::numeric_limits<double>::infinity();
        for (double psi = -25.0; psi <= 25.0; psi += 0.5) {
            const double d = delta_beta(tb, Level::active);
            const double p = p_of_psi(tb, psi);
            const double f = std::exp(log_odds_factor(tb, psi, LevelPair::active_reference));
            CHECK(std::abs(f - (std::exp(d) + (1.0 - std::exp(d)) * p)) <= 1e-12 * f);
            CHECK(f <= previous * (1.0 + 1e-12));
            previous = f;
            CHECK(p_bounds(tb).contains(p, 1e-15));
            const auto e = psi_effects(tb, psi);
            CHECK(b.nde.contains(e.nde(), 1e-12));
            CHECK(b.nie.contains(e.nie(), 1e-12));
            CHECK(b.te.contains(e.te(), 1e-12));
        }
    }
}

TEST_CASE("sensitivity curve") {
    const std::vector<double> grid{-2.0, 0.0, 2.0};
    const auto c = sensitivity_curve(kPublished, grid);
    REQUIRE(c.effects.size() == 3);
    CHECK(c.effects[1].nde() == doctest::Approx(point_effects(kPublished).nde()).epsilon(1e-12));
    CHECK(c.p_values[0] < c.p_values[2]);
}
