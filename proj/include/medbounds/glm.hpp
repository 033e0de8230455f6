#pragma once

#include "medbounds/dataset.hpp"
#include "medbounds/design.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace medb {

struct FitOptions {
    double tolerance = 1e-8;            // max-norm of the mean score on the scaled design
    int max_iterations = 100;
    double separation_threshold = 15.0; // on the scaled-design coefficient scale
};

struct IterationTrace {
    int iteration = 0;
    double log_likelihood = 0.0;
    double gradient_norm = 0.0;
    int halvings = 0;
};

struct ConvergenceReport {
    int iterations = 0;
    double gradient_norm = 0.0;
    double log_likelihood = 0.0;
    std::size_t observations = 0;
    std::vector<IterationTrace> trajectory;
    std::vector<std::string> warnings;
};

/// An immutable fitted logistic model: design, coefficients, and the inverse
/// observed information as coefficient covariance.
class FittedGlm {
public:
    FittedGlm(DesignSpec design, Eigen::VectorXd coefficients, Eigen::MatrixXd covariance,
              ConvergenceReport report = {});

    const DesignSpec& design() const noexcept { return design_; }
    const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
    const Eigen::MatrixXd& covariance() const noexcept { return covariance_; }
    const ConvergenceReport& report() const noexcept { return report_; }
    Eigen::VectorXd standard_errors() const { return covariance_.diagonal().cwiseSqrt(); }

    /// Gradient of the linear predictor with respect to the coefficients.
    Eigen::VectorXd design_row(const Point& point) const { return design_.row(point); }
    double linear_predictor(const Point& point) const { return design_row(point).dot(coefficients_); }

private:
    DesignSpec design_;
    Eigen::VectorXd coefficients_;
    Eigen::MatrixXd covariance_;
    ConvergenceReport report_;
};

/// Maximum-likelihood logistic fit by damped Newton (step halving).
///
/// The response is the outcome for ModelRole::outcome and the mediator for
/// ModelRole::mediator. Columns are rescaled by their root-mean-square before
/// iterating and the result is mapped back, so the fit is equivariant under
/// rescaling of any basis column.
///
/// Throws Error with kind singular_design (naming the collinear terms),
/// no_convergence (with the iteration trajectory), or separation.
FittedGlm fit_logistic(const Dataset& data, const DesignSpec& design, ModelRole role,
                       const FitOptions& options = {});

/// Bernoulli log-likelihood of coefficients on a dataset.
double log_likelihood(const Dataset& data, const FittedGlm& model);

}  // namespace medb
