#pragma once

#include "medbounds/oracles.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace medb {

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    int random_thetas = 200;
    int psi_per_theta = 100;
    std::size_t sweep_points = 20001;
    double sweep_range = 40.0;
    int derivative_thetas = 100;
    int random_scms = 200;
    int coverage_replicates = 500;
    std::size_t coverage_n = 5000;
    double coverage_floor = 0.93;
    bool run_coverage = true;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool passed() const;
    std::string to_text() const;
    std::string to_json() const;
};

using DerivativeFn = std::function<Matrix64(const ThetaBundle&)>;

/// Largest |D - D_fd| over `count` random thetas, with D from `derivative`.
ValidationCheck check_derivatives(const DerivativeFn& derivative, int count, std::uint64_t seed, double tolerance = 1e-6);

ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace medb
