#include "medbounds/oracles.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace medb {

namespace {

void widen(BoundPair& b, double v) {
    b.lower = std::min(b.lower, v);
    b.upper = std::max(b.upper, v);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

double grid_point(double lo, double hi, std::size_t i, std::size_t points) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

}  // namespace

SweepBounds psi_sweep_bounds(const ThetaBundle& theta, double lo, double hi, std::size_t points) {
    if (points < 2) fail(ErrorKind::invalid_input, "psi sweep needs at least 2 points");
    SweepBounds out{{kInf, -kInf}, {kInf, -kInf}, {kInf, -kInf}};
    for (std::size_t i = 0; i < points; ++i) {
        const auto e = psi_effects(theta, grid_point(lo, hi, i, points));
        widen(out.nde, e.nde());
        widen(out.nie, e.nie());
        widen(out.te, e.te());
    }
    return out;
}

SweepBounds pairwise_sweep_bounds(const ThetaBundle& theta, double lo, double hi, std::size_t points) {
    if (points < 2) fail(ErrorKind::invalid_input, "psi sweep needs at least 2 points");
    BoundPair cross{kInf, -kInf}, active{kInf, -kInf}, reference{kInf, -kInf};
    for (std::size_t i = 0; i < points; ++i) {
        const double psi = grid_point(lo, hi, i, points);
        widen(cross, log_odds_factor(theta, psi, LevelPair::active_reference));
        widen(active, log_odds_factor(theta, psi, LevelPair::active_active));
        widen(reference, log_odds_factor(theta, psi, LevelPair::reference_reference));
    }
    const double shift = theta[ThetaBundle::beta_x0] - theta[ThetaBundle::beta_xs0];
    SweepBounds out;
    out.nde = {shift + cross.lower - reference.upper, shift + cross.upper - reference.lower};
    out.nie = {active.lower - cross.upper, active.upper - cross.lower};
    out.te = {out.nde.lower + out.nie.lower, out.nde.upper + out.nie.upper};
    return out;
}

double mediation_formula_logit(const ThetaBundle& theta, LevelPair pair) {
    const Level a = pair == LevelPair::reference_reference ? Level::reference : Level::active;
    const Level b = pair == LevelPair::active_active ? Level::active : Level::reference;
    const double pm = expit(theta.mediator(b));
    const double py = (1.0 - pm) * expit(theta.outcome(a, 0)) + pm * expit(theta.outcome(a, 1));
    return logit(py);
}

Matrix64 fd_derivative_matrix(const ThetaBundle& theta, double h) {
    Matrix64 D;
    for (int i = 0; i < 6; ++i) {
        Vector6 up = theta.theta(), down = theta.theta();
        up[i] += h;
        down[i] -= h;
        D.row(i) = ((tau_vector(ThetaBundle(up)) - tau_vector(ThetaBundle(down))) / (2.0 * h)).transpose();
    }
    return D;
}

ThetaBundle random_theta(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> base(-5.0, 1.0), mag(0.05, 3.0), gamma(-3.0, 3.0), coin(0.0, 1.0);
    auto delta = [&] { return (coin(rng) < 0.5 ? -1.0 : 1.0) * mag(rng); };
    Vector6 t;
    t[ThetaBundle::beta_x0] = base(rng);
    t[ThetaBundle::beta_xs0] = base(rng);
    t[ThetaBundle::beta_x1] = t[ThetaBundle::beta_x0] + delta();
    t[ThetaBundle::beta_xs1] = t[ThetaBundle::beta_xs0] + delta();
    t[ThetaBundle::gamma_x] = gamma(rng);
    t[ThetaBundle::gamma_xs] = gamma(rng);
    return ThetaBundle(t);
}

ScmCase random_unconfounded_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> prob(0.03, 0.97), weight(0.2, 1.0), value(-2.0, 2.0);
    std::uniform_int_distribution<int> small(2, 3);

    StructuralModel scm;
    scm.covariate_names = {"C1"};
    const int C = small(rng), K = small(rng), U1 = small(rng), U2 = small(rng);
    auto normalised = [&](int n) {
        std::vector<double> w(static_cast<std::size_t>(n));
        double total = 0.0;
        for (auto& v : w) total += (v = weight(rng));
        for (auto& v : w) v /= total;
        return w;
    };
    const auto cp = normalised(C);
    for (int c = 0; c < C; ++c) scm.c_support.push_back({{static_cast<double>(c) + 0.5 * value(rng)}, cp[static_cast<std::size_t>(c)]});
    scm.u1_probs = normalised(U1);
    scm.u2_probs = normalised(U2);
    for (int k = 0; k < K; ++k) scm.exposure_grid.push_back(10.0 * k + value(rng));
    std::sort(scm.exposure_grid.begin(), scm.exposure_grid.end());

    scm.x_prob.assign(static_cast<std::size_t>(C), {});
    for (auto& byc : scm.x_prob)
        for (int u1 = 0; u1 < U1; ++u1) byc.push_back(normalised(K));
    // U2 moves M only; Y ignores both latents, so no confounding of any kind.
    scm.m_prob.assign(static_cast<std::size_t>(K), std::vector<std::vector<double>>(static_cast<std::size_t>(C)));
    for (auto& byk : scm.m_prob)
        for (auto& byc : byk)
            for (int u2 = 0; u2 < U2; ++u2) byc.push_back(prob(rng));
    scm.y_prob.assign(static_cast<std::size_t>(K), {});
    for (auto& byk : scm.y_prob)
        for (int m = 0; m < 2; ++m) {
            std::vector<std::vector<std::vector<double>>> bym;
            for (int c = 0; c < C; ++c) {
                const double p = prob(rng);
                bym.push_back(std::vector<std::vector<double>>(static_cast<std::size_t>(U1),
                                                               std::vector<double>(static_cast<std::size_t>(U2), p)));
            }
            byk.push_back(std::move(bym));
        }
    scm.validate();

    std::uniform_int_distribution<int> pick_k(0, K - 1), pick_c(0, C - 1);
    const int kx = pick_k(rng);
    int ks = pick_k(rng);
    if (ks == kx) ks = (kx + 1) % K;
    ContrastSpec contrast{scm.exposure_grid[static_cast<std::size_t>(kx)], scm.exposure_grid[static_cast<std::size_t>(ks)],
                          scm.profile(static_cast<std::size_t>(pick_c(rng)))};
    return {std::move(scm), std::move(contrast)};
}

bool CrossWorldReport::pccwd_holds(double tol) const {
    for (int m = 0; m < 2; ++m)
        if (std::abs(cross_world_same[m] - reference[m]) > tol) return false;
    return true;
}

bool CrossWorldReport::cwi_holds(double tol) const {
    for (int m = 0; m < 2; ++m)
        for (double v : {single_world_flip[m], marginal[m], cross_world_same[m], cross_world_flip[m]})
            if (std::abs(v - reference[m]) > tol) return false;
    return true;
}

CrossWorldReport cross_world_report(const StructuralModel& scm, const ContrastSpec& contrast) {
    const auto law = enumerate_counterfactuals(scm, contrast);
    CrossWorldReport r;
    for (int m = 0; m < 2; ++m) {
        // [a][m][b][m'] with a = x (0); b = 0 is x, b = 1 is x*
        r.reference[m] = law.y_given_m[0][m][0][m];
        r.single_world_flip[m] = law.y_given_m[0][m][0][1 - m];
        r.marginal[m] = law.y_fixed[0][m];
        r.cross_world_same[m] = law.y_given_m[0][m][1][m];
        r.cross_world_flip[m] = law.y_given_m[0][m][1][1 - m];
    }
    return r;
}

double NormalStream::uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

double NormalStream::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * 3.14159265358979323846 * uniform();
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

Eigen::MatrixXd parametric_bootstrap_tau(const ThetaBundle& theta, int replicates, std::uint64_t seed) {
    Eigen::SelfAdjointEigenSolver<Matrix6> eig(theta.sigma());
    const Matrix6 root = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    NormalStream normal(derive_seed(seed, 7));
    Eigen::MatrixXd out(replicates, 4);
    for (int r = 0; r < replicates; ++r) {
        Vector6 z;
        for (int i = 0; i < 6; ++i) z[i] = normal();
        out.row(r) = tau_vector(ThetaBundle(theta.theta() + root * z)).transpose();
    }
    return out;
}

CoverageResult coverage_simulation(const CoverageSetup& setup) {
    CoverageResult result;
    result.truth = true_effects(setup.scm, setup.contrast);
    const auto outcome_design = DesignSpec::parse(setup.outcome_design, ModelRole::outcome);
    const auto mediator_design = DesignSpec::parse(setup.mediator_design, ModelRole::mediator);
    for (int r = 0; r < setup.replicates; ++r) {
        ++result.replicates;
        try {
            const auto data = sample_dataset(setup.scm, setup.n, derive_seed(setup.seed, static_cast<std::uint64_t>(r)));
            const auto outcome = fit_logistic(data, outcome_design, ModelRole::outcome);
            const auto mediator = fit_logistic(data, mediator_design, ModelRole::mediator);
            const auto theta = theta_bundle(outcome, mediator, setup.contrast);
            const auto bounds = effect_bounds(theta);
            const auto ui = uncertainty_intervals(bounds, tau_covariance(theta), setup.alpha);
            result.covered_nde += ui.nde.contains(result.truth.nde());
            result.covered_nie += ui.nie.contains(result.truth.nie());
            result.covered_te += ui.te.contains(result.truth.te());
        } catch (const Error&) {
            ++result.fit_failures;
        }
    }
    return result;
}

CoverageSetup default_coverage_setup() {
    CoverageSetup setup;
    setup.scm = cun_like_scm();
    // Male profile at the BMI grid point closest to the male average.
    std::size_t best = 0;
    double gap = kInf;
    for (std::size_t c = 0; c < setup.scm.c_support.size(); ++c) {
        const auto& v = setup.scm.c_support[c].values;
        if (v[1] == 1.0 && std::abs(v[0] - 28.50) < gap) {
            gap = std::abs(v[0] - 28.50);
            best = c;
        }
    }
    setup.contrast = {50.0, 10.0, setup.scm.profile(best)};
    setup.outcome_design = {"1", "X", "M", "BMI", "Gender"};
    setup.mediator_design = {"1", "X", "BMI", "Gender"};
    return setup;
}

}  // namespace medb
