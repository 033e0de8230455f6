#pragma once

#include <cmath>

namespace medb {

/// log(1 + e^z) without overflow or loss of precision for large |z|.
inline double softplus(double z) {
    if (z > 30.0) return z + std::log1p(std::exp(-z));
    if (z < -30.0) return std::exp(z);
    return std::log1p(std::exp(z));
}

inline double expit(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

inline double logit(double p) { return std::log(p) - std::log1p(-p); }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Inverse standard normal CDF (Wichura AS 241, ~1e-16 relative accuracy).
/// p must lie strictly inside (0, 1).
double normal_quantile(double p);

}  // namespace medb
