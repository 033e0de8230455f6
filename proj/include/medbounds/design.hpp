#pragma once

#include "medbounds/dataset.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace medb {

enum class ModelRole { outcome, mediator };

/// Piecewise-linear user basis: linear interpolation through (knots, values),
/// constant beyond the end knots.
struct LookupTable {
    std::string variable;
    std::vector<double> knots;
    std::vector<double> values;

    double operator()(double v) const;
};

/// One multiplicative factor of a term: var, var^k, or table(var).
struct Factor {
    std::string variable;
    int power = 1;
    std::shared_ptr<const LookupTable> table;  // when set, the factor is table(variable)
};

/// A basis function: the product of its factors. No factors means the constant term.
struct Term {
    std::string label;
    std::vector<Factor> factors;

    bool is_intercept() const noexcept { return factors.empty(); }
};

/// Ordered list of basis functions for one logistic model.
///
/// Terms are written as small expressions: `1`, `X`, `M`, a covariate name,
/// products such as `X*M` or `BMI*Gender`, powers such as `X^2`, and
/// `table:NAME` for a user lookup table applied to its declared variable.
/// `X` and `M` always denote the exposure and mediator.
class DesignSpec {
public:
    DesignSpec(std::vector<Term> terms, ModelRole role);

    static DesignSpec parse(const std::vector<std::string>& expressions, ModelRole role,
                            const std::map<std::string, LookupTable>& tables = {});

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    ModelRole role() const noexcept { return role_; }
    bool has_intercept() const noexcept { return !terms_.empty() && terms_.front().is_intercept(); }

    /// Copy with exposure/mediator column names rewritten to X/M, so the design
    /// can be evaluated on bare Points.
    DesignSpec canonical(const ColumnMapping& mapping) const;

    /// Variable names the design references.
    std::vector<std::string> variables() const;

    /// Basis evaluation at a point; throws naming the first missing variable.
    Eigen::VectorXd row(const Point& point) const;

    /// n x p design matrix over a dataset. Exposure/mediator may be referenced
    /// by X/M or by their column names.
    Eigen::MatrixXd matrix(const Dataset& data) const;

private:
    std::vector<Term> terms_;
    ModelRole role_;
};

}  // namespace medb
