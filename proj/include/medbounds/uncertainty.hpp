#pragma once

#include "medbounds/bounds.hpp"

#include <Eigen/Dense>

namespace medb {

using Vector4 = Eigen::Matrix<double, 4, 1>;
using Matrix4 = Eigen::Matrix<double, 4, 4>;
using Matrix64 = Eigen::Matrix<double, 6, 4>;

/// tau = (log l_NDE, log u_NDE, log l_NIE, log u_NIE) and its delta-method covariance.
struct TauBounds {
    Vector4 tau = Vector4::Zero();
    Matrix4 v0 = Matrix4::Zero();
    Warnings warnings;
};

struct UncertaintyIntervals {
    double alpha = 0.05;
    BoundPair nde;
    BoundPair nie;
    BoundPair te;
    Warnings warnings;
};

struct TeVariances {
    double lower = 0.0;  // Var(log l_TE)
    double upper = 0.0;  // Var(log u_TE)
};

/// tau from the closed-form bounds.
Vector4 tau_vector(const ThetaBundle& theta);

/// D[i][j] = d tau_j / d theta_i (rows in ThetaBundle order).
Matrix64 derivative_matrix(const ThetaBundle& theta, Warnings* warnings = nullptr);

/// tau with V0 = D^T Sigma D. Throws Error(non_psd) if Sigma is not positive semidefinite.
TauBounds tau_covariance(const ThetaBundle& theta);

/// Variances of the TE bound estimators, including the NDE/NIE cross-covariances.
/// Negative round-off is clipped to zero with a warning.
TeVariances te_bound_variances(const TauBounds& tb, Warnings* warnings = nullptr);

/// Identification bounds widened by z_{alpha/2} standard errors on each side.
UncertaintyIntervals uncertainty_intervals(const EffectBounds& bounds, const TauBounds& tb, double alpha);

}  // namespace medb
