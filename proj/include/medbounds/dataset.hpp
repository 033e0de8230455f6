#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medb {

/// Which CSV columns play which role.
struct ColumnMapping {
    std::string outcome = "Y";
    std::string mediator = "M";
    std::string exposure = "X";
    std::vector<std::string> covariates;
};

struct Record {
    int outcome = 0;
    int mediator = 0;
    double exposure = 0.0;
    std::vector<double> covariates;  // ordered as Dataset::covariate_names()
};

/// A single evaluation point for a design: exposure, optional mediator value, and
/// named covariates. "X" and "M" always resolve to exposure and mediator.
struct Point {
    double exposure = 0.0;
    std::optional<double> mediator;
    std::map<std::string, double, std::less<>> covariates;

    std::optional<double> lookup(std::string_view name) const;
};

/// Validated (Y, M, X, C) records. Outcome and mediator are strictly binary and
/// both levels of each are present.
class Dataset {
public:
    Dataset(ColumnMapping mapping, std::vector<Record> records);

    /// Reads a headered CSV. Rows with an empty or NA field in any mapped column
    /// are dropped and counted; anything else malformed is an error.
    static Dataset read_csv(const std::string& path, const ColumnMapping& mapping);
    static Dataset parse_csv(std::istream& in, const ColumnMapping& mapping,
                             const std::string& source = "<stream>");

    void write_csv(std::ostream& out) const;

    const ColumnMapping& mapping() const noexcept { return mapping_; }
    const std::vector<std::string>& covariate_names() const noexcept { return mapping_.covariates; }
    const std::vector<Record>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    std::size_t dropped_rows() const noexcept { return dropped_; }

    double min_exposure() const;
    double max_exposure() const;

private:
    ColumnMapping mapping_;
    std::vector<Record> records_;
    std::size_t dropped_ = 0;
};

}  // namespace medb
