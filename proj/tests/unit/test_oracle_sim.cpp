#include "fixtures.hpp"

#include "medbounds/numeric.hpp"
#include "medbounds/oracles.hpp"
#include "medbounds/scm.hpp"
#include "medbounds/validation.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace medb;

namespace {

StructuralModel hand_scm() {
    StructuralModel scm;
    scm.c_support = {{{}, 1.0}};
    scm.exposure_grid = {0.0, 1.0};
    scm.x_prob = {{{0.5, 0.5}}};
    scm.m_prob = {{{0.2}}, {{0.6}}};
    scm.y_prob = {{{{{0.1}}}, {{{0.3}}}}, {{{{0.4}}}, {{{0.7}}}}};
    scm.validate();
    return scm;
}

}  // namespace

TEST_CASE("counterfactual enumeration by hand") {
    const auto scm = hand_scm();
    const ContrastSpec c{1.0, 0.0, {}};
    const auto law = enumerate_counterfactuals(scm, c);
    CHECK(law.y_cross[0][1] == doctest::Approx(0.46).epsilon(1e-15));  // Y(x, M(x*))
    CHECK(law.y_cross[1][1] == doctest::Approx(0.14).epsilon(1e-15));  // Y(x*, M(x*))
    CHECK(law.y_cross[0][0] == doctest::Approx(0.58).epsilon(1e-15));  // Y(x, M(x))
    CHECK(law.y_total[0] == doctest::Approx(0.58).epsilon(1e-15));
    CHECK(law.m_joint[1][1] == doctest::Approx(0.2).epsilon(1e-15));
    const auto e = true_effects(scm, c);
    CHECK(e.nde() == doctest::Approx(logit(0.46) - logit(0.14)).epsilon(1e-13));
    CHECK(e.nie() == doctest::Approx(logit(0.58) - logit(0.46)).epsilon(1e-13));
    const auto pe = point_effects(observational_theta(scm, c));
    CHECK(std::abs(pe.nde() - e.nde()) < 1e-12);
    CHECK(std::abs(pe.nie() - e.nie()) < 1e-12);
}

TEST_CASE("exposure or profile outside the SCM support") {
    const auto scm = hand_scm();
    CHECK(fixtures::error_kind([&] { true_effects(scm, {0.5, 0.0, {}}); }) == ErrorKind::invalid_input);
    const auto cun = cun_like_scm();
    CHECK(fixtures::error_kind([&] { true_effects(cun, {50.0, 10.0, {{"BMI", 1.0}, {"Gender", 1.0}}}); }) ==
          ErrorKind::invalid_input);
}

TEST_CASE("SCM validation") {
    auto scm = hand_scm();
    scm.x_prob = {{{0.5, 0.6}}};
    CHECK(fixtures::error_kind([&] { scm.validate(); }) == ErrorKind::invalid_input);
    scm = hand_scm();
    scm.m_prob[0][0][0] = 1.2;
    CHECK(fixtures::error_kind([&] { scm.validate(); }) == ErrorKind::invalid_input);
    CHECK(fixtures::error_kind([] { parse_scm("{not json"); }) == ErrorKind::invalid_input);
}

TEST_CASE("SCM JSON round trip") {
    const auto scm = cun_like_scm();
    const auto back = parse_scm(scm_to_json(scm));
    CHECK(back.covariate_names == scm.covariate_names);
    CHECK(back.exposure_grid == scm.exposure_grid);
    CHECK(back.m_prob == scm.m_prob);
    CHECK(back.y_prob == scm.y_prob);
    const auto file = load_scm(MEDB_DATA_DIR "/cun_like_scm.json");
    CHECK(file.y_prob == scm.y_prob);
    CHECK(file.c_support.size() == 14);
}

TEST_CASE("bundled SCM follows the published mediator model") {
    const auto scm = cun_like_scm();
    const auto c = scm.profile_index({{"BMI", scm.c_support[3].values[0]}, {"Gender", 1.0}});
    const double bmi = scm.c_support[c].values[0];
    const std::size_t k = scm.exposure_index(50.0);
    CHECK(logit(observed_p_mediator(scm, k, c)) == doctest::Approx(0.418 + 0.017 * 50 - 0.098 * bmi + 0.595).epsilon(1e-12));
    double mean = 0.0, var = 0.0, male = 0.0;
    for (const auto& p : scm.c_support) {
        mean += p.prob * p.values[0];
        male += p.prob * p.values[1];
    }
    for (const auto& p : scm.c_support) var += p.prob * (p.values[0] - mean) * (p.values[0] - mean);
    CHECK(mean == doctest::Approx(27.564).epsilon(1e-12));
    CHECK(std::sqrt(var) == doctest::Approx(4.443).epsilon(1e-12));
    CHECK(male == doctest::Approx(0.725).epsilon(1e-12));
}

TEST_CASE("sampling is seed-deterministic") {
    const auto scm = cun_like_scm();
    std::ostringstream a, b, c;
    sample_dataset(scm, 500, 1).write_csv(a);
    sample_dataset(scm, 500, 1).write_csv(b);
    sample_dataset(scm, 500, 2).write_csv(c);
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
    CHECK(fixtures::error_kind([&] { sample_dataset(scm, 0, 1); }) == ErrorKind::invalid_input);
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}

TEST_CASE("sample frequencies approach the SCM law") {
    const auto scm = hand_scm();
    const auto d = sample_dataset(scm, 200000, 17);
    double m_at_1 = 0, n_at_1 = 0;
    for (const auto& r : d.records())
        if (r.exposure == 1.0) {
            n_at_1 += 1;
            m_at_1 += r.mediator;
        }
    CHECK(m_at_1 / n_at_1 == doctest::Approx(0.6).epsilon(0.01));
}

TEST_CASE("random unconfounded SCMs: truth inside bounds, point equals truth") {
    std::mt19937_64 rng(5);
    for (int s = 0; s < 50; ++s) {
        const auto sc = random_unconfounded_case(rng);
        const auto truth = true_effects(sc.scm, sc.contrast);
        const auto theta = observational_theta(sc.scm, sc.contrast);
        const auto b = effect_bounds(theta);
        CHECK(b.nde.contains(truth.nde(), 1e-9));
        CHECK(b.nie.contains(truth.nie(), 1e-9));
        CHECK(b.te.contains(truth.te(), 1e-9));
        const auto pe = point_effects(theta);
        CHECK(std::abs(pe.te() - truth.te()) < 1e-9);
        for (auto pair : {LevelPair::active_reference, LevelPair::active_active, LevelPair::reference_reference})
            CHECK(std::abs(nem_logit(theta, pair) - logit(mediation_formula(sc.scm, sc.contrast, pair))) < 1e-10);
    }
}

TEST_CASE("cross-world assumptions") {
    const auto pc = pccwd_counterexample_scm();
    const auto r = cross_world_report(pc, {1.0, 0.0, pc.profile(0)});
    CHECK(r.pccwd_holds());
    CHECK_FALSE(r.cwi_holds());

    std::mt19937_64 rng(8);
    const auto sc = random_unconfounded_case(rng);
    const auto q = cross_world_report(sc.scm, sc.contrast);
    CHECK(q.cwi_holds(1e-12));
    CHECK(q.pccwd_holds(1e-12));
}

TEST_CASE("validation suite passes on this build and is reproducible") {
    ValidationOptions o;
    o.random_thetas = 30;
    o.sweep_points = 2001;
    o.derivative_thetas = 20;
    o.random_scms = 30;
    o.coverage_replicates = 20;
    o.coverage_n = 2000;
    const auto a = run_validation(o);
    const auto b = run_validation(o);
    CHECK(a.passed());
    CHECK(a.to_text() == b.to_text());
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("a sign error in the derivative matrix is caught") {
    const auto mutated = [](const ThetaBundle& t) {
        Matrix64 D = derivative_matrix(t);
        D(0, 0) = -D(0, 0);
        return D;
    };
    const auto bad = check_derivatives(mutated, 10, 3);
    CHECK_FALSE(bad.passed);
    CHECK(bad.measured > 1e-3);
    const auto good = check_derivatives([](const ThetaBundle& t) { return derivative_matrix(t); }, 10, 3);
    CHECK(good.passed);
}

TEST_CASE("coverage simulation is seed-deterministic") {
    auto setup = default_coverage_setup();
    setup.replicates = 5;
    setup.n = 1500;
    const auto a = coverage_simulation(setup);
    const auto b = coverage_simulation(setup);
    CHECK(a.covered_nde == b.covered_nde);
    CHECK(a.covered_te == b.covered_te);
    CHECK(a.fit_failures == 0);
}
