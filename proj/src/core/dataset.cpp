#include "medbounds/dataset.hpp"

#include "medbounds/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace medb {

std::optional<double> Point::lookup(std::string_view name) const {
    if (name == "X") return exposure;
    if (name == "M") return mediator;
    if (auto it = covariates.find(name); it != covariates.end()) return it->second;
    return std::nullopt;
}

Dataset::Dataset(ColumnMapping mapping, std::vector<Record> records)
    : mapping_(std::move(mapping)), records_(std::move(records)) {
    if (records_.empty()) fail(ErrorKind::invalid_input, "dataset has no rows");
    bool y0 = false, y1 = false, m0 = false, m1 = false;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if ((r.outcome != 0 && r.outcome != 1) || (r.mediator != 0 && r.mediator != 1))
            fail(ErrorKind::invalid_input, "row " + std::to_string(i + 1) + ": outcome and mediator must be 0 or 1");
        if (r.covariates.size() != mapping_.covariates.size())
            fail(ErrorKind::invalid_input, "row " + std::to_string(i + 1) + ": covariate count mismatch");
        if (!std::isfinite(r.exposure) ||
            !std::all_of(r.covariates.begin(), r.covariates.end(), [](double v) { return std::isfinite(v); }))
            fail(ErrorKind::invalid_input, "row " + std::to_string(i + 1) + ": non-finite value");
        (r.outcome ? y1 : y0) = true;
        (r.mediator ? m1 : m0) = true;
    }
    if (!(y0 && y1)) fail(ErrorKind::invalid_input, "outcome column '" + mapping_.outcome + "' is constant");
    if (!(m0 && m1)) fail(ErrorKind::invalid_input, "mediator column '" + mapping_.mediator + "' is constant");
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool is_missing(const std::string& field) {
    return field.empty() || field == "NA" || field == "NaN" || field == "nan" || field == ".";
}

double parse_real(const std::string& field, const std::string& where) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        fail(ErrorKind::invalid_input, where + ": cannot parse '" + field + "' as a real number");
    return v;
}

int parse_binary(const std::string& field, const std::string& where) {
    double v = parse_real(field, where);
    if (v != 0.0 && v != 1.0) fail(ErrorKind::invalid_input, where + ": expected 0 or 1, got '" + field + "'");
    return static_cast<int>(v);
}

}  // namespace

Dataset Dataset::read_csv(const std::string& path, const ColumnMapping& mapping) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open data file '" + path + "'");
    return parse_csv(in, mapping, path);
}

Dataset Dataset::parse_csv(std::istream& in, const ColumnMapping& mapping, const std::string& source) {
    std::string line;
    if (!std::getline(in, line) || trim(line).empty())
        fail(ErrorKind::invalid_input, source + ": empty file (header row required)");
    const auto header = split_line(line);
    auto column = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) fail(ErrorKind::invalid_input, source + ": column '" + name + "' not found in header");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t iy = column(mapping.outcome);
    const std::size_t im = column(mapping.mediator);
    const std::size_t ix = column(mapping.exposure);
    std::vector<std::size_t> ic;
    for (const auto& c : mapping.covariates) ic.push_back(column(c));

    std::vector<Record> records;
    std::size_t dropped = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != header.size())
            fail(ErrorKind::invalid_input, source + ":" + std::to_string(lineno) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(fields.size()));
        auto where = [&](const std::string& col) { return source + ":" + std::to_string(lineno) + " column '" + col + "'"; };
        bool missing = is_missing(fields[iy]) || is_missing(fields[im]) || is_missing(fields[ix]);
        for (auto k : ic) missing = missing || is_missing(fields[k]);
        if (missing) {
            ++dropped;
            continue;
        }
        Record r;
        r.outcome = parse_binary(fields[iy], where(mapping.outcome));
        r.mediator = parse_binary(fields[im], where(mapping.mediator));
        r.exposure = parse_real(fields[ix], where(mapping.exposure));
        for (std::size_t k = 0; k < ic.size(); ++k)
            r.covariates.push_back(parse_real(fields[ic[k]], where(mapping.covariates[k])));
        records.push_back(std::move(r));
    }
    if (records.empty()) fail(ErrorKind::invalid_input, source + ": no complete data rows");
    Dataset ds(mapping, std::move(records));
    ds.dropped_ = dropped;
    return ds;
}

void Dataset::write_csv(std::ostream& out) const {
    out << mapping_.outcome << ',' << mapping_.mediator << ',' << mapping_.exposure;
    for (const auto& c : mapping_.covariates) out << ',' << c;
    out << '\n';
    std::ostringstream row;
    row << std::setprecision(17);
    for (const auto& r : records_) {
        row.str({});
        row << r.outcome << ',' << r.mediator << ',' << r.exposure;
        for (double v : r.covariates) row << ',' << v;
        out << row.str() << '\n';
    }
}

double Dataset::min_exposure() const {
    return std::min_element(records_.begin(), records_.end(),
                            [](const Record& a, const Record& b) { return a.exposure < b.exposure; })
        ->exposure;
}

double Dataset::max_exposure() const {
    return std::max_element(records_.begin(), records_.end(),
                            [](const Record& a, const Record& b) { return a.exposure < b.exposure; })
        ->exposure;
}

}  // namespace medb
