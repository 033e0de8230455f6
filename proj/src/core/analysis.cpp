#include "medbounds/analysis.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"
#include "medbounds/scm.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace medb {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string resolve(const std::string& path, const std::string& base_dir) {
    if (path.empty() || base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) fail(ErrorKind::invalid_input, where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(ErrorKind::invalid_input, "unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorKind::invalid_input, std::string("bad or missing '") + key + "' in " + where);
    }
}

std::map<std::string, LookupTable> parse_tables(const json& j) {
    std::map<std::string, LookupTable> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string where = "table '" + it.key() + "'";
        only_keys(it.value(), {"variable", "knots", "values"}, where);
        out[it.key()] = {get<std::string>(it.value(), "variable", where),
                         get<std::vector<double>>(it.value(), "knots", where),
                         get<std::vector<double>>(it.value(), "values", where)};
    }
    return out;
}

json tables_json(const std::map<std::string, LookupTable>& tables) {
    json j = json::object();
    for (const auto& [name, t] : tables) j[name] = {{"variable", t.variable}, {"knots", t.knots}, {"values", t.values}};
    return j;
}

ColumnMapping parse_columns(const json& j) {
    only_keys(j, {"outcome", "mediator", "exposure", "covariates"}, "columns");
    ColumnMapping m;
    m.outcome = j.value("outcome", m.outcome);
    m.mediator = j.value("mediator", m.mediator);
    m.exposure = j.value("exposure", m.exposure);
    m.covariates = j.value("covariates", std::vector<std::string>{});
    return m;
}

json columns_json(const ColumnMapping& m) {
    return {{"outcome", m.outcome}, {"mediator", m.mediator}, {"exposure", m.exposure}, {"covariates", m.covariates}};
}

std::vector<std::string> default_terms(const ColumnMapping& m, ModelRole role) {
    std::vector<std::string> terms{"1", m.exposure};
    if (role == ModelRole::outcome) terms.push_back(m.mediator);
    terms.insert(terms.end(), m.covariates.begin(), m.covariates.end());
    return terms;
}

DesignSpec build_design(const std::vector<std::string>& terms, ModelRole role, const ColumnMapping& columns,
                        const std::map<std::string, LookupTable>& tables) {
    const auto design = DesignSpec::parse(terms, role, tables).canonical(columns);
    for (const auto& v : design.variables()) {
        if (v == "X" || v == "M") continue;
        if (std::find(columns.covariates.begin(), columns.covariates.end(), v) == columns.covariates.end())
            fail(ErrorKind::invalid_input, "design variable '" + v + "' is not a mapped column");
    }
    return design;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string num(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string full(double v) { return std::isfinite(v) ? num("%.10g", v) : "NA"; }

json full_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

/// Fixed-width text table with right-aligned cells after the first column.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& r) {
        std::string out;
        for (std::size_t c = 0; c < r.size(); ++c) {
            const std::string pad(width[c] - r[c].size(), ' ');
            out += c == 0 ? r[c] + pad : "  " + pad + r[c];
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + '\n';
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    auto line = [](const std::vector<std::string>& r) {
        std::string out;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c) out += ',';
            const bool quote = r[c].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                out += r[c];
                continue;
            }
            out += '"';
            for (char ch : r[c]) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            out += '"';
        }
        return out + '\n';
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

double wald_p(double est, double se) { return se > 0.0 ? std::erfc(std::abs(est / se) / std::sqrt(2.0)) : kNaN; }

std::string term_label(const std::string& t) { return t == "1" ? "Intercept" : t; }

json model_json(const FittedGlm& m, const std::vector<std::string>& terms) {
    const auto se = m.standard_errors();
    json coef = json::array();
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        coef.push_back({{"term", terms[j]}, {"estimate", m.coefficients()[i]}, {"std_error", se[i]},
                        {"p_value", full_json(wald_p(m.coefficients()[i], se[i]))}});
    }
    json cov = json::array();
    for (Eigen::Index r = 0; r < m.covariance().rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.covariance().cols(); ++c) row.push_back(m.covariance()(r, c));
        cov.push_back(row);
    }
    const auto& rep = m.report();
    json conv = {{"iterations", rep.iterations}, {"gradient_norm", rep.gradient_norm},
                 {"log_likelihood", rep.log_likelihood}, {"observations", rep.observations}, {"warnings", rep.warnings}};
    return {{"terms", terms}, {"coefficients", coef}, {"covariance", cov}, {"convergence", conv}};
}

FittedGlm model_from_json(const json& j, ModelRole role, const ColumnMapping& columns,
                          const std::map<std::string, LookupTable>& tables, std::vector<std::string>& terms) {
    const std::string where = role == ModelRole::outcome ? "outcome model" : "mediator model";
    terms = get<std::vector<std::string>>(j, "terms", where);
    const auto design = build_design(terms, role, columns, tables);
    std::vector<std::string> ordered;
    for (const auto& t : design.terms()) ordered.push_back(t.label);
    if (!design.terms().empty() && design.has_intercept() && terms.front() != "1" &&
        std::find(terms.begin(), terms.end(), "1") != terms.end())
        fail(ErrorKind::invalid_input, where + ": the constant term must be listed first");
    const auto& coef = j.at("coefficients");
    const auto n = static_cast<Eigen::Index>(ordered.size());
    if (!coef.is_array() || coef.size() != ordered.size())
        fail(ErrorKind::invalid_input, where + ": coefficient count does not match terms");
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& c = coef[static_cast<std::size_t>(i)];
        b[i] = c.is_number() ? c.get<double>() : get<double>(c, "estimate", where);
    }
    const auto cov = get<std::vector<std::vector<double>>>(j, "covariance", where);
    if (cov.size() != ordered.size()) fail(ErrorKind::invalid_input, where + ": covariance has wrong size");
    Eigen::MatrixXd V(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (cov[static_cast<std::size_t>(r)].size() != ordered.size())
            fail(ErrorKind::invalid_input, where + ": covariance has wrong size");
        for (Eigen::Index c = 0; c < n; ++c) V(r, c) = cov[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    terms = ordered;
    return FittedGlm(design, b, V);
}

std::vector<double> default_x_values(double lo, double hi) {
    std::vector<double> xs;
    for (int i = 0; i <= 20; ++i) xs.push_back(lo + (hi - lo) * i / 20.0);
    return xs;
}

const char* kEffectNames[3] = {"NDE", "NIE", "TE"};

double point_of(const ContrastRow& r, int e) { return e == 0 ? r.point.nde() : e == 1 ? r.point.nie() : r.point.te(); }
const BoundPair& bound_of(const ContrastRow& r, int e) { return e == 0 ? r.bounds.nde : e == 1 ? r.bounds.nie : r.bounds.te; }
const BoundPair& ui_of(const ContrastRow& r, int e) {
    return e == 0 ? r.intervals.nde : e == 1 ? r.intervals.nie : r.intervals.te;
}

ModelPair obtain_models(const AnalysisConfig& config, Warnings* warnings) {
    if (!config.models_path.empty()) return load_models(config.models_path);
    if (config.data_path.empty()) fail(ErrorKind::invalid_input, "no data file and no model file configured");
    const auto data = Dataset::read_csv(config.data_path, config.columns);
    if (data.dropped_rows() && warnings)
        warnings->push_back(std::to_string(data.dropped_rows()) + " rows with missing values dropped");
    return fit_models(data, config);
}

CommandResult cmd_fit(const AnalysisConfig& config) {
    CommandResult res;
    if (config.data_path.empty()) fail(ErrorKind::invalid_input, "fit needs a data file");
    const auto data = Dataset::read_csv(config.data_path, config.columns);
    if (data.dropped_rows()) res.warnings.push_back(std::to_string(data.dropped_rows()) + " rows with missing values dropped");
    const auto models = fit_models(data, config);
    for (const auto* m : {&models.mediator, &models.outcome})
        for (const auto& w : m->report().warnings) res.warnings.push_back(w);

    if (config.format == "json") {
        res.output = models_to_json(models);
        return res;
    }
    std::vector<std::vector<std::string>> rows;
    auto add = [&](const char* name, const FittedGlm& m, const std::vector<std::string>& terms) {
        const auto se = m.standard_errors();
        for (std::size_t j = 0; j < terms.size(); ++j) {
            const auto i = static_cast<Eigen::Index>(j);
            const double p = wald_p(m.coefficients()[i], se[i]);
            if (config.format == "csv")
                rows.push_back({name, terms[j], full(m.coefficients()[i]), full(se[i]), full(p)});
            else
                rows.push_back({term_label(terms[j]), num("%.3f", m.coefficients()[i]), num("%.3f", se[i]), num("%.3f", p)});
        }
    };
    if (config.format == "csv") {
        add("mediator", models.mediator, models.mediator_terms);
        add("outcome", models.outcome, models.outcome_terms);
        res.output = render_csv({"model", "term", "estimate", "std_error", "p_value"}, rows);
        return res;
    }
    add("mediator", models.mediator, models.mediator_terms);
    res.output = "n = " + std::to_string(data.size()) + "\n\n" + render_table({"Mediator", "est.", "s.e.", "p-value"}, rows);
    rows.clear();
    add("outcome", models.outcome, models.outcome_terms);
    res.output += "\n" + render_table({"Outcome", "est.", "s.e.", "p-value"}, rows);
    return res;
}

CommandResult cmd_rows(std::string_view command, const AnalysisConfig& config) {
    CommandResult res;
    const auto models = obtain_models(config, &res.warnings);
    const auto rows = evaluate_contrasts(models, config, &res.warnings);
    const bool effects_only = command == "effects";
    const bool with_pairs = command == "bounds";

    std::vector<std::string> header{"profile", "x", "x_star"};
    if (with_pairs) {
        for (const char* p : {"x_xstar", "x_x", "xstar_xstar"})
            for (const char* s : {"lower", "upper"}) header.push_back(std::string("odds_factor_") + p + "_" + s);
        header.insert(header.end(), {"p_lower", "p_upper"});
    }
    for (int e = 0; e < 3; ++e) {
        const std::string n = kEffectNames[e];
        header.push_back(n);
        if (effects_only) continue;
        header.insert(header.end(), {n + "_lower", n + "_upper", n + "_ui_lower", n + "_ui_upper"});
    }

    if (config.format == "json") {
        json out = json::array();
        for (const auto& r : rows) {
            json j{{"profile", r.profile}, {"x", r.x}, {"x_star", r.x_star}};
            if (with_pairs) {
                const char* names[3] = {"x_xstar", "x_x", "xstar_xstar"};
                for (int p = 0; p < 3; ++p) j["odds_factor"][names[p]] = {full_json(r.pair[p].lower), full_json(r.pair[p].upper)};
                j["p_range"] = {full_json(r.p_range.lower), full_json(r.p_range.upper)};
            }
            for (int e = 0; e < 3; ++e) {
                if (effects_only) {
                    j[kEffectNames[e]] = point_of(r, e);
                    continue;
                }
                j[kEffectNames[e]] = {{"point", point_of(r, e)},
                                      {"bounds", {bound_of(r, e).lower, bound_of(r, e).upper}},
                                      {"interval", {ui_of(r, e).lower, ui_of(r, e).upper}}};
            }
            out.push_back(j);
        }
        res.output = json{{"alpha", config.alpha}, {"scale", "log odds ratio"}, {"rows", out}}.dump(2) + "\n";
        return res;
    }

    const bool csv = config.format == "csv";
    auto cell = [&](double v) { return csv ? full(v) : std::isfinite(v) ? num("%.4f", v) : std::string("NA"); };
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
        std::vector<std::string> t{r.profile, csv ? full(r.x) : num("%g", r.x), csv ? full(r.x_star) : num("%g", r.x_star)};
        if (with_pairs) {
            for (const auto& p : r.pair) t.insert(t.end(), {cell(p.lower), cell(p.upper)});
            t.insert(t.end(), {cell(r.p_range.lower), cell(r.p_range.upper)});
        }
        for (int e = 0; e < 3; ++e) {
            t.push_back(cell(point_of(r, e)));
            if (effects_only) continue;
            t.insert(t.end(), {cell(bound_of(r, e).lower), cell(bound_of(r, e).upper), cell(ui_of(r, e).lower),
                               cell(ui_of(r, e).upper)});
        }
        table.push_back(std::move(t));
    }
    res.output = csv ? render_csv(header, table) : render_table(header, table);
    return res;
}

CommandResult cmd_simulate(const AnalysisConfig& config) {
    CommandResult res;
    if (config.format == "json") fail(ErrorKind::invalid_input, "simulate writes CSV data; use --format csv or table");
    const auto scm = config.scm_path.empty() ? cun_like_scm() : load_scm(config.scm_path);
    const auto data = sample_dataset(scm, config.simulate_n, config.seed);
    std::ostringstream os;
    data.write_csv(os);
    res.output = os.str();
    return res;
}

CommandResult cmd_validate(const AnalysisConfig& config) {
    CommandResult res;
    auto opts = config.validation;
    opts.seed = config.seed;
    const auto report = run_validation(opts);
    res.validation_passed = report.passed();
    if (config.format == "json") {
        res.output = report.to_json();
    } else if (config.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& c : report.checks)
            rows.push_back({c.name, c.passed ? "pass" : "fail", num("%.6e", c.measured), num("%.6e", c.tolerance), c.detail});
        res.output = render_csv({"check", "result", "measured", "tolerance", "detail"}, rows);
    } else {
        res.output = report.to_text();
    }
    return res;
}

}  // namespace

AnalysisConfig AnalysisConfig::from_json(std::string_view text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::invalid_input, std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(j, {"data", "columns", "outcome_design", "mediator_design", "tables", "models", "contrast", "alpha",
                  "format", "seed", "simulate", "validate"},
              "config");
    AnalysisConfig c;
    if (j.contains("data")) c.data_path = resolve(get<std::string>(j, "data", "config"), base_dir);
    if (j.contains("models")) c.models_path = resolve(get<std::string>(j, "models", "config"), base_dir);
    if (j.contains("columns")) {
        c.columns = parse_columns(j["columns"]);
        c.columns_given = true;
    }
    if (j.contains("outcome_design")) c.outcome_design = get<std::vector<std::string>>(j, "outcome_design", "config");
    if (j.contains("mediator_design")) c.mediator_design = get<std::vector<std::string>>(j, "mediator_design", "config");
    if (j.contains("tables")) c.tables = parse_tables(j["tables"]);
    if (j.contains("alpha")) c.alpha = get<double>(j, "alpha", "config");
    if (j.contains("format")) c.format = get<std::string>(j, "format", "config");
    if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
    if (j.contains("contrast")) {
        const auto& k = j["contrast"];
        only_keys(k, {"x", "x_range", "x_star", "profiles"}, "contrast");
        if (k.contains("x_star") && !k["x_star"].is_number())
            fail(ErrorKind::invalid_input, "contrast.x_star must be a single number");
        c.x_star = k.value("x_star", c.x_star);
        if (k.contains("x")) {
            if (k["x"].is_number()) c.x_values = {k["x"].get<double>()};
            else c.x_values = get<std::vector<double>>(k, "x", "contrast");
        }
        if (k.contains("x_range")) {
            const auto& r = k["x_range"];
            only_keys(r, {"from", "to", "step"}, "contrast.x_range");
            const double from = get<double>(r, "from", "contrast.x_range"), to = get<double>(r, "to", "contrast.x_range"),
                         step = get<double>(r, "step", "contrast.x_range");
            if (!(step > 0.0) || to < from) fail(ErrorKind::invalid_input, "contrast.x_range needs from <= to and step > 0");
            const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9));
            for (long i = 0; i <= count; ++i) c.x_values.push_back(from + static_cast<double>(i) * step);
        }
        if (k.contains("profiles")) {
            for (const auto& p : k["profiles"]) {
                only_keys(p, {"name", "values"}, "profile");
                ProfileSpec spec;
                spec.name = p.value("name", "profile" + std::to_string(c.profiles.size() + 1));
                for (auto it = p.at("values").begin(); it != p.at("values").end(); ++it) {
                    if (!it.value().is_number())
                        fail(ErrorKind::invalid_input, "profile value '" + it.key() + "' must be a number");
                    spec.values[it.key()] = it.value().get<double>();
                }
                c.profiles.push_back(std::move(spec));
            }
        }
    }
    if (j.contains("simulate")) {
        const auto& s = j["simulate"];
        only_keys(s, {"scm", "n"}, "simulate");
        if (s.contains("scm")) c.scm_path = resolve(get<std::string>(s, "scm", "simulate"), base_dir);
        if (s.contains("n")) c.simulate_n = get<std::size_t>(s, "n", "simulate");
    }
    if (j.contains("validate")) {
        const auto& v = j["validate"];
        only_keys(v, {"random_thetas", "psi_per_theta", "sweep_points", "derivative_thetas", "random_scms",
                      "coverage_replicates", "coverage_n", "coverage"},
                  "validate");
        auto& o = c.validation;
        o.random_thetas = v.value("random_thetas", o.random_thetas);
        o.psi_per_theta = v.value("psi_per_theta", o.psi_per_theta);
        o.sweep_points = v.value("sweep_points", o.sweep_points);
        o.derivative_thetas = v.value("derivative_thetas", o.derivative_thetas);
        o.random_scms = v.value("random_scms", o.random_scms);
        o.coverage_replicates = v.value("coverage_replicates", o.coverage_replicates);
        o.coverage_n = v.value("coverage_n", o.coverage_n);
        o.run_coverage = v.value("coverage", o.run_coverage);
    }
    c.check();
    return c;
}

void AnalysisConfig::check() const {
    if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::invalid_input, "alpha must lie in (0, 1)");
    if (!std::isfinite(x_star)) fail(ErrorKind::invalid_input, "x_star must be finite");
    for (double x : x_values)
        if (!std::isfinite(x)) fail(ErrorKind::invalid_input, "x values must be finite");
    if (format != "table" && format != "csv" && format != "json")
        fail(ErrorKind::invalid_input, "format must be table, csv or json");
    if (simulate_n == 0) fail(ErrorKind::invalid_input, "simulate.n must be positive");
    if (validation.sweep_points < 2) fail(ErrorKind::invalid_input, "validate.sweep_points must be at least 2");
}

ModelPair fit_models(const Dataset& data, const AnalysisConfig& config) {
    const auto& cols = data.mapping();
    auto oterms = config.outcome_design.empty() ? default_terms(cols, ModelRole::outcome) : config.outcome_design;
    auto mterms = config.mediator_design.empty() ? default_terms(cols, ModelRole::mediator) : config.mediator_design;
    const auto odesign = build_design(oterms, ModelRole::outcome, cols, config.tables);
    const auto mdesign = build_design(mterms, ModelRole::mediator, cols, config.tables);
    auto outcome = fit_logistic(data, odesign, ModelRole::outcome);
    auto mediator = fit_logistic(data, mdesign, ModelRole::mediator);
    oterms.clear();
    mterms.clear();
    for (const auto& t : odesign.terms()) oterms.push_back(t.label);
    for (const auto& t : mdesign.terms()) mterms.push_back(t.label);
    return {cols, config.tables, std::move(oterms), std::move(mterms), std::move(outcome), std::move(mediator),
            data.min_exposure(), data.max_exposure(), data.size()};
}

std::string models_to_json(const ModelPair& m) {
    json j{{"columns", columns_json(m.columns)},
           {"exposure_range", {m.exposure_min, m.exposure_max}},
           {"observations", m.observations},
           {"tables", tables_json(m.tables)},
           {"outcome", model_json(m.outcome, m.outcome_terms)},
           {"mediator", model_json(m.mediator, m.mediator_terms)}};
    return j.dump(2) + "\n";
}

ModelPair parse_models(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::invalid_input, std::string("model file is not valid JSON: ") + e.what());
    }
    only_keys(j, {"columns", "exposure_range", "observations", "tables", "outcome", "mediator", "note"}, "model file");
    const auto columns = j.contains("columns") ? parse_columns(j["columns"]) : ColumnMapping{};
    const auto tables = j.contains("tables") ? parse_tables(j["tables"]) : std::map<std::string, LookupTable>{};
    std::vector<std::string> oterms, mterms;
    if (!j.contains("outcome") || !j.contains("mediator"))
        fail(ErrorKind::invalid_input, "model file needs 'outcome' and 'mediator'");
    auto outcome = model_from_json(j["outcome"], ModelRole::outcome, columns, tables, oterms);
    auto mediator = model_from_json(j["mediator"], ModelRole::mediator, columns, tables, mterms);
    const auto range = get<std::vector<double>>(j, "exposure_range", "model file");
    if (range.size() != 2 || !(range[0] <= range[1]))
        fail(ErrorKind::invalid_input, "model file: exposure_range must be [min, max]");
    return {columns, tables, std::move(oterms), std::move(mterms), std::move(outcome), std::move(mediator),
            range[0], range[1], j.value("observations", std::size_t{0})};
}

ModelPair load_models(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_models(ss.str());
    } catch (const Error& e) {
        fail(e.kind(), path + ": " + e.what());
    }
}

std::vector<ProfileSpec> default_profiles(const ColumnMapping& columns) {
    if (columns.covariates.empty()) return {{"all", {}}};
    if (columns.covariates.size() == 2) {
        std::string bmi, gender;
        for (const auto& c : columns.covariates) {
            if (lower(c) == "bmi") bmi = c;
            if (lower(c) == "gender") gender = c;
        }
        if (!bmi.empty() && !gender.empty())
            return {{"female", {{bmi, 25.05}, {gender, 0.0}}}, {"male", {{bmi, 28.50}, {gender, 1.0}}}};
    }
    fail(ErrorKind::invalid_input, "no covariate profiles configured; add contrast.profiles or --profile");
}

std::vector<ContrastRow> evaluate_contrasts(const ModelPair& models, const AnalysisConfig& config, Warnings* warnings) {
    auto warn = [&](std::string w) {
        if (warnings && std::find(warnings->begin(), warnings->end(), w) == warnings->end()) warnings->push_back(std::move(w));
    };
    if (config.x_star < models.exposure_min || config.x_star > models.exposure_max)
        warn("x_star = " + num("%g", config.x_star) + " lies outside the observed exposure range [" +
             num("%g", models.exposure_min) + ", " + num("%g", models.exposure_max) + "]");
    const auto xs = config.x_values.empty() ? default_x_values(models.exposure_min, models.exposure_max) : config.x_values;
    const auto profiles = config.profiles.empty() ? default_profiles(models.columns) : config.profiles;

    std::vector<ContrastRow> rows;
    for (const auto& prof : profiles) {
        for (double x : xs) {
            ContrastRow r;
            r.profile = prof.name;
            r.x = x;
            r.x_star = config.x_star;
            const ContrastSpec contrast{x, config.x_star, prof.values};
            r.theta = theta_bundle(models.outcome, models.mediator, contrast);
            r.point = point_effects(r.theta);
            r.bounds = effect_bounds(r.theta);
            const auto tb = tau_covariance(r.theta);
            r.intervals = uncertainty_intervals(r.bounds, tb, config.alpha);
            const LevelPair pairs[3] = {LevelPair::active_reference, LevelPair::active_active,
                                        LevelPair::reference_reference};
            for (int p = 0; p < 3; ++p) r.pair[p] = pair_bounds(r.theta, pairs[p]);
            if (is_degenerate(delta_beta(r.theta, Level::active))) r.p_range = {kNaN, kNaN};
            else r.p_range = p_bounds(r.theta);
            const std::string where = " (profile " + prof.name + ", x = " + num("%g", x) + ")";
            for (const auto& w : r.bounds.warnings) warn(w + where);
            for (const auto& w : tb.warnings) warn(w + where);
            for (const auto& w : r.intervals.warnings) warn(w + where);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

CommandResult run_command(std::string_view command, const AnalysisConfig& config) {
    config.check();
    if (command == "fit") return cmd_fit(config);
    if (command == "effects" || command == "bounds" || command == "curve") return cmd_rows(command, config);
    if (command == "simulate") return cmd_simulate(config);
    if (command == "validate") return cmd_validate(config);
    fail(ErrorKind::invalid_input, "unknown command '" + std::string(command) + "'");
}

}  // namespace medb
