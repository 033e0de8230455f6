#pragma once

#include "medbounds/glm.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace medb {

using Warnings = std::vector<std::string>;

enum class Level { active, reference };

/// Level pair (a, b): outcome model evaluated at a, mediator model at b.
enum class LevelPair {
    active_reference,     // (x, x*)
    active_active,        // (x, x)
    reference_reference,  // (x*, x*)
};

/// Active level x, reference level x*, and the covariate profile c.
struct ContrastSpec {
    double x = 0.0;
    double x_star = 0.0;
    std::map<std::string, double, std::less<>> profile;
};

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Linear predictors at the six points that determine every effect, in the fixed order
///   0: r_beta(x,0)  1: r_beta(x*,0)  2: r_beta(x,1)  3: r_beta(x*,1)  4: r_gamma(x)  5: r_gamma(x*)
/// together with the covariance of their estimator.
class ThetaBundle {
public:
    enum Index : int { beta_x0 = 0, beta_xs0 = 1, beta_x1 = 2, beta_xs1 = 3, gamma_x = 4, gamma_xs = 5 };

    ThetaBundle() = default;
    explicit ThetaBundle(const Vector6& theta, const Matrix6& sigma = Matrix6::Zero());

    const Vector6& theta() const noexcept { return theta_; }
    const Matrix6& sigma() const noexcept { return sigma_; }
    double operator[](int i) const { return theta_[i]; }

    double outcome(Level at, int mediator) const;
    double mediator(Level at) const;

    /// Same predictors with the covariance replaced.
    ThetaBundle with_sigma(const Matrix6& sigma) const { return ThetaBundle(theta_, sigma); }

private:
    Vector6 theta_ = Vector6::Zero();
    Matrix6 sigma_ = Matrix6::Zero();
};

/// Log odds-ratio natural effects. te is always nde + nie.
class EffectTriple {
public:
    EffectTriple() = default;
    EffectTriple(double nde, double nie) : nde_(nde), nie_(nie), te_(nde + nie) {}

    double nde() const noexcept { return nde_; }
    double nie() const noexcept { return nie_; }
    double te() const noexcept { return te_; }

private:
    double nde_ = 0.0;
    double nie_ = 0.0;
    double te_ = 0.0;
};

Point contrast_point(const ContrastSpec& contrast, Level at, std::optional<int> mediator);

/// theta from the two fitted models; sigma = A blockdiag(Cov_beta, Cov_gamma) A^T
/// with A stacking the design rows (outcome rows 0-3, mediator rows 4-5). The two
/// coefficient estimators are treated as uncorrelated.
ThetaBundle theta_bundle(const FittedGlm& outcome, const FittedGlm& mediator, const ContrastSpec& contrast);

/// 6 x (p_beta + p_gamma) Jacobian of theta with respect to the stacked coefficients.
Eigen::MatrixXd theta_jacobian(const FittedGlm& outcome, const FittedGlm& mediator, const ContrastSpec& contrast);

/// logit P(M(b)=1 | Y(a, M(b)) = y, C = c) for the pair (a, b).
double g_y(const ThetaBundle& theta, int y, LevelPair pair = LevelPair::active_reference);

/// logit P(Y(a, M(b)) = 1 | C = c); for (x, x) this is the marginal model logit.
double nem_logit(const ThetaBundle& theta, LevelPair pair);

/// Point-identified NDE/NIE/TE under no unmeasured confounding and cross-world independence.
EffectTriple point_effects(const ThetaBundle& theta);

}  // namespace medb
