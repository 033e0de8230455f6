#include "medbounds/glm.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"

#include <cmath>
#include <sstream>

namespace medb {

FittedGlm::FittedGlm(DesignSpec design, Eigen::VectorXd coefficients, Eigen::MatrixXd covariance,
                     ConvergenceReport report)
    : design_(std::move(design)),
      coefficients_(std::move(coefficients)),
      covariance_(std::move(covariance)),
      report_(std::move(report)) {
    const auto p = static_cast<Eigen::Index>(design_.size());
    if (coefficients_.size() != p || covariance_.rows() != p || covariance_.cols() != p)
        fail(ErrorKind::invalid_input, "coefficient/covariance dimensions do not match the design");
    if (!coefficients_.allFinite() || !covariance_.allFinite())
        fail(ErrorKind::invalid_input, "non-finite coefficients or covariance");
    const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
    if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        fail(ErrorKind::invalid_input, "coefficient covariance is not symmetric");
    if ((covariance_.diagonal().array() < 0.0).any())
        fail(ErrorKind::invalid_input, "coefficient covariance has a negative variance");
}

namespace {

Eigen::VectorXd response(const Dataset& data, ModelRole role) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& r = data.records()[i];
        y[static_cast<Eigen::Index>(i)] = role == ModelRole::outcome ? r.outcome : r.mediator;
    }
    return y;
}

double bernoulli_loglik(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) ll += y[i] * eta[i] - softplus(eta[i]);
    return ll;
}

std::string describe(const std::vector<IterationTrace>& trajectory) {
    std::ostringstream os;
    for (const auto& t : trajectory)
        os << "\n  iter " << t.iteration << ": loglik=" << t.log_likelihood << " |score|=" << t.gradient_norm
           << " halvings=" << t.halvings;
    return os.str();
}

}  // namespace

FittedGlm fit_logistic(const Dataset& data, const DesignSpec& spec, ModelRole role, const FitOptions& options) {
    if (spec.role() != role) fail(ErrorKind::invalid_input, "design role does not match the requested model role");
    const DesignSpec design = spec.canonical(data.mapping());
    const Eigen::MatrixXd X = design.matrix(data);
    const Eigen::VectorXd y = response(data, role);
    const auto n = X.rows();
    const auto p = X.cols();
    const double dn = static_cast<double>(n);

    Eigen::VectorXd scale = (X.colwise().squaredNorm() / dn).cwiseSqrt().transpose();
    for (Eigen::Index j = 0; j < p; ++j)
        if (scale[j] == 0.0) scale[j] = 1.0;
    const Eigen::MatrixXd Z = X * scale.cwiseInverse().asDiagonal();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        std::string names;
        for (Eigen::Index k = qr.rank(); k < p; ++k) {
            const auto j = static_cast<std::size_t>(qr.colsPermutation().indices()[k]);
            names += (names.empty() ? "'" : ", '") + design.terms()[j].label + "'";
        }
        fail(ErrorKind::singular_design,
             "design matrix is rank deficient (rank " + std::to_string(qr.rank()) + " of " + std::to_string(p) +
                 "); collinear term(s): " + names);
    }

    ConvergenceReport report;
    report.observations = static_cast<std::size_t>(n);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double ll = bernoulli_loglik(y, eta);
    bool converged = false;
    int polish = 1;  // one extra Newton step after the tolerance is met

    for (int iter = 0; iter <= options.max_iterations; ++iter) {
        Eigen::VectorXd mu(n), w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mu[i] = expit(eta[i]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        const Eigen::VectorXd score = Z.transpose() * (y - mu);
        const double gnorm = score.cwiseAbs().maxCoeff() / dn;
        IterationTrace trace{iter, ll, gnorm, 0};
        if (gnorm < options.tolerance) {
            converged = true;
            if (polish-- <= 0) {
                report.trajectory.push_back(trace);
                break;
            }
        }
        if (iter == options.max_iterations) {
            report.trajectory.push_back(trace);
            break;
        }
        const Eigen::MatrixXd info = Z.transpose() * w.asDiagonal() * Z;
        const Eigen::VectorXd step = info.ldlt().solve(score);

        double t = 1.0;
        Eigen::VectorXd next = beta + step;
        Eigen::VectorXd next_eta = Z * next;
        double next_ll = bernoulli_loglik(y, next_eta);
        while (!(next_ll >= ll - 1e-12 * std::abs(ll)) && trace.halvings < 40) {
            t *= 0.5;
            ++trace.halvings;
            next = beta + t * step;
            next_eta = Z * next;
            next_ll = bernoulli_loglik(y, next_eta);
        }
        report.trajectory.push_back(trace);
        if (converged && next_ll < ll) break;  // polishing step would not help
        beta = std::move(next);
        eta = std::move(next_eta);
        ll = next_ll;

        const double biggest = beta.cwiseAbs().maxCoeff();
        if (biggest > options.separation_threshold) {
            Eigen::Index j = 0;
            beta.cwiseAbs().maxCoeff(&j);
            fail(ErrorKind::separation,
                 "complete or quasi-complete separation: coefficient of '" +
                     design.terms()[static_cast<std::size_t>(j)].label + "' diverging (|scaled estimate| > " +
                     std::to_string(options.separation_threshold) + ")" + describe(report.trajectory));
        }
    }
    if (!converged)
        fail(ErrorKind::no_convergence,
             "logistic fit did not converge in " + std::to_string(options.max_iterations) + " iterations" +
                 describe(report.trajectory));

    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mu = expit(eta[i]);
        w[i] = mu * (1.0 - mu);
    }
    Eigen::VectorXd mu = eta.unaryExpr([](double e) { return expit(e); });
    const Eigen::MatrixXd info = Z.transpose() * w.asDiagonal() * Z;
    Eigen::MatrixXd cov_scaled = info.ldlt().solve(Eigen::MatrixXd::Identity(p, p));
    cov_scaled = 0.5 * (cov_scaled + cov_scaled.transpose()).eval();

    const Eigen::VectorXd inv = scale.cwiseInverse();
    Eigen::VectorXd coefficients = beta.cwiseProduct(inv);
    Eigen::MatrixXd covariance = inv.asDiagonal() * cov_scaled * inv.asDiagonal();
    covariance = 0.5 * (covariance + covariance.transpose()).eval();

    report.iterations = static_cast<int>(report.trajectory.size()) - 1;
    report.gradient_norm = (Z.transpose() * (y - mu)).cwiseAbs().maxCoeff() / dn;
    report.log_likelihood = ll;
    const double max_fitted = mu.maxCoeff(), min_fitted = mu.minCoeff();
    if (max_fitted > 1.0 - 1e-10 || min_fitted < 1e-10)
        report.warnings.push_back("fitted probabilities numerically 0 or 1 occurred");
    return FittedGlm(design, std::move(coefficients), std::move(covariance), std::move(report));
}

double log_likelihood(const Dataset& data, const FittedGlm& model) {
    const Eigen::VectorXd eta = model.design().matrix(data) * model.coefficients();
    return bernoulli_loglik(response(data, model.design().role()), eta);
}

}  // namespace medb
