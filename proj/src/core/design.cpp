#include "medbounds/design.hpp"

#include "medbounds/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace medb {

double LookupTable::operator()(double v) const {
    if (v <= knots.front()) return values.front();
    if (v >= knots.back()) return values.back();
    auto it = std::upper_bound(knots.begin(), knots.end(), v);
    const auto hi = static_cast<std::size_t>(it - knots.begin());
    const auto lo = hi - 1;
    const double w = (v - knots[lo]) / (knots[hi] - knots[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

double eval_factor(const Factor& f, double v) {
    if (f.table) return (*f.table)(v);
    return f.power == 1 ? v : std::pow(v, f.power);
}

}  // namespace

DesignSpec::DesignSpec(std::vector<Term> terms, ModelRole role) : terms_(std::move(terms)), role_(role) {
    if (terms_.empty()) fail(ErrorKind::invalid_input, "design has no terms");
    for (std::size_t i = 1; i < terms_.size(); ++i)
        if (terms_[i].is_intercept()) fail(ErrorKind::invalid_input, "the constant term must be listed first");
    if (role_ == ModelRole::mediator) {
        for (const auto& t : terms_)
            for (const auto& f : t.factors)
                if (f.variable == "M")
                    fail(ErrorKind::invalid_input, "mediator-model term '" + t.label + "' references the mediator");
    }
}

DesignSpec DesignSpec::parse(const std::vector<std::string>& expressions, ModelRole role,
                             const std::map<std::string, LookupTable>& tables) {
    std::vector<Term> terms;
    std::set<std::string> seen;
    for (const auto& raw : expressions) {
        const std::string expr = strip(raw);
        if (expr.empty()) fail(ErrorKind::invalid_input, "empty design term");
        if (!seen.insert(expr).second) fail(ErrorKind::invalid_input, "duplicate design term '" + expr + "'");
        Term term{expr, {}};
        if (expr != "1") {
            std::size_t pos = 0;
            while (pos <= expr.size()) {
                auto star = expr.find('*', pos);
                std::string piece = expr.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
                Factor f;
                if (piece.rfind("table:", 0) == 0) {
                    const std::string name = piece.substr(6);
                    auto it = tables.find(name);
                    if (it == tables.end()) fail(ErrorKind::invalid_input, "unknown lookup table '" + name + "'");
                    const auto& t = it->second;
                    if (t.knots.size() < 2 || t.knots.size() != t.values.size() ||
                        !std::is_sorted(t.knots.begin(), t.knots.end()) ||
                        std::adjacent_find(t.knots.begin(), t.knots.end()) != t.knots.end())
                        fail(ErrorKind::invalid_input, "lookup table '" + name + "' needs >= 2 strictly increasing knots");
                    f.variable = t.variable;
                    f.table = std::make_shared<LookupTable>(t);
                } else {
                    auto caret = piece.find('^');
                    f.variable = piece.substr(0, caret);
                    if (caret != std::string::npos) {
                        const std::string p = piece.substr(caret + 1);
                        if (p.empty() || !std::all_of(p.begin(), p.end(), ::isdigit) || std::stoi(p) < 1)
                            fail(ErrorKind::invalid_input, "bad power in term '" + expr + "'");
                        f.power = std::stoi(p);
                    }
                }
                if (!valid_name(f.variable)) fail(ErrorKind::invalid_input, "bad design term '" + expr + "'");
                term.factors.push_back(std::move(f));
                if (star == std::string::npos) break;
                pos = star + 1;
            }
        }
        terms.push_back(std::move(term));
    }
    // Canonical ordering: constant first.
    std::stable_partition(terms.begin(), terms.end(), [](const Term& t) { return t.is_intercept(); });
    return DesignSpec(std::move(terms), role);
}

DesignSpec DesignSpec::canonical(const ColumnMapping& mapping) const {
    auto terms = terms_;
    for (auto& t : terms)
        for (auto& f : t.factors) {
            if (f.variable == mapping.exposure) f.variable = "X";
            else if (f.variable == mapping.mediator) f.variable = "M";
        }
    return DesignSpec(std::move(terms), role_);
}

std::vector<std::string> DesignSpec::variables() const {
    std::vector<std::string> out;
    for (const auto& t : terms_)
        for (const auto& f : t.factors)
            if (std::find(out.begin(), out.end(), f.variable) == out.end()) out.push_back(f.variable);
    return out;
}

Eigen::VectorXd DesignSpec::row(const Point& point) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(terms_.size()));
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        double value = 1.0;
        for (const auto& f : terms_[j].factors) {
            auto x = point.lookup(f.variable);
            if (!x) fail(ErrorKind::invalid_input, "evaluation point lacks variable '" + f.variable + "'");
            value *= eval_factor(f, *x);
        }
        v[static_cast<Eigen::Index>(j)] = value;
    }
    return v;
}

Eigen::MatrixXd DesignSpec::matrix(const Dataset& data) const {
    const auto& map = data.mapping();
    // slot 0 = exposure, 1 = mediator, 2 + k = covariate k
    auto slot_of = [&](const std::string& name) -> int {
        if (name == "X" || name == map.exposure) return 0;
        if (name == "M" || name == map.mediator) {
            if (role_ == ModelRole::mediator)
                fail(ErrorKind::invalid_input, "mediator model references the mediator column '" + name + "'");
            return 1;
        }
        if (name == map.outcome) fail(ErrorKind::invalid_input, "design references the outcome column '" + name + "'");
        auto it = std::find(map.covariates.begin(), map.covariates.end(), name);
        if (it == map.covariates.end()) fail(ErrorKind::invalid_input, "design variable '" + name + "' is not a mapped column");
        return 2 + static_cast<int>(it - map.covariates.begin());
    };
    std::vector<std::vector<int>> slots(terms_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j)
        for (const auto& f : terms_[j].factors) slots[j].push_back(slot_of(f.variable));

    const auto n = static_cast<Eigen::Index>(data.size());
    Eigen::MatrixXd X(n, static_cast<Eigen::Index>(terms_.size()));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = data.records()[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            double value = 1.0;
            for (std::size_t k = 0; k < slots[j].size(); ++k) {
                const int s = slots[j][k];
                const double x = s == 0 ? r.exposure : s == 1 ? r.mediator : r.covariates[static_cast<std::size_t>(s - 2)];
                value *= eval_factor(terms_[j].factors[k], x);
            }
            if (!std::isfinite(value))
                fail(ErrorKind::invalid_input, "term '" + terms_[j].label + "' is not finite on row " + std::to_string(i + 1));
            X(i, static_cast<Eigen::Index>(j)) = value;
        }
    }
    return X;
}

}  // namespace medb
