// medbounds command-line front end; talks to the library only through the C API.
#include "medbounds/medbounds.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Flags {
    std::string config, data, models, scm, format, out;
    std::vector<std::string> x, profile;
    std::optional<double> x_star, alpha;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
};

std::vector<double> parse_x(const std::vector<std::string>& items) {
    std::vector<double> xs;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            // from:to:step expands to a grid
            if (tok.find(':') != std::string::npos) {
                double a, b, s;
                char c1, c2;
                std::stringstream rs(tok);
                if (!(rs >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' || !(s > 0) || b < a)
                    throw CLI::ValidationError("--x", "bad range '" + tok + "' (want from:to:step)");
                for (long i = 0; a + static_cast<double>(i) * s <= b + 1e-9 * s; ++i) xs.push_back(a + static_cast<double>(i) * s);
                continue;
            }
            try {
                std::size_t used = 0;
                xs.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw CLI::ValidationError("--x", "not a number: '" + tok + "'");
            }
        }
    }
    return xs;
}

nlohmann::ordered_json build_config(const Flags& f, std::string& base_dir) {
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw std::runtime_error("cannot open config '" + f.config + "'");
        try {
            cfg = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(f.config + ": " + e.what());
        }
        base_dir = std::filesystem::absolute(f.config).parent_path().string();
    }
    // Paths given on the command line are relative to the working directory.
    auto cwd_path = [](const std::string& p) { return std::filesystem::absolute(p).string(); };
    if (!f.data.empty()) cfg["data"] = cwd_path(f.data);
    if (!f.models.empty()) cfg["models"] = cwd_path(f.models);
    if (!f.scm.empty()) cfg["simulate"]["scm"] = cwd_path(f.scm);
    if (f.n) cfg["simulate"]["n"] = *f.n;
    if (!f.format.empty()) cfg["format"] = f.format;
    if (f.alpha) cfg["alpha"] = *f.alpha;
    if (f.seed) cfg["seed"] = *f.seed;
    if (f.x_star) cfg["contrast"]["x_star"] = *f.x_star;
    if (!f.x.empty()) {
        cfg["contrast"]["x"] = parse_x(f.x);
        if (cfg["contrast"].contains("x_range")) cfg["contrast"].erase("x_range");
    }
    if (!f.profile.empty()) {
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        std::string name = "custom";
        for (const auto& kv : f.profile) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--profile", "want key=value, got '" + kv + "'");
            const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "name") {
                name = val;
                continue;
            }
            try {
                std::size_t used = 0;
                values[key] = std::stod(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw CLI::ValidationError("--profile", "value for '" + key + "' is not a number");
            }
        }
        cfg["contrast"]["profiles"] = nlohmann::ordered_json::array({{{"name", name}, {"values", values}}});
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mediation effects and PC-CWD identification bounds for a binary mediator and outcome"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(medb_version()));
    Flags f;

    const std::pair<const char*, const char*> commands[] = {
        {"fit", "fit the outcome and mediator logistic models"},
        {"effects", "point estimates of NDE, NIE and TE"},
        {"bounds", "identification bounds and uncertainty intervals"},
        {"curve", "bound curves over a grid of exposure levels"},
        {"simulate", "draw a synthetic data set from a structural model"},
        {"validate", "run the oracle property suite"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--data", f.data, "CSV data file");
        sub->add_option("--models", f.models, "saved model file (from `fit --format json`)");
        sub->add_option("--x", f.x, "active exposure levels: list, or from:to:step")->delimiter(',');
        sub->add_option("--x-star", f.x_star, "reference exposure level");
        sub->add_option("--profile", f.profile, "covariate value key=val (repeatable; name=LABEL names it)");
        sub->add_option("--alpha", f.alpha, "1 - confidence level of the uncertainty intervals");
        sub->add_option("--seed", f.seed, "random seed");
        sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--out", f.out, "write output here instead of stdout");
        sub->add_option("--n", f.n, "sample size for simulate");
        sub->add_option("--scm", f.scm, "structural model JSON for simulate");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::string base_dir, text;
    try {
        text = build_config(f, base_dir).dump();
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    char* output = nullptr;
    char* warnings = nullptr;
    const medb_status status = medb_run(command.c_str(), text.c_str(), base_dir.empty() ? nullptr : base_dir.c_str(),
                                        &output, &warnings);
    if (warnings && *warnings) {
        std::istringstream ws(warnings);
        for (std::string line; std::getline(ws, line);) std::cerr << "warning: " << line << "\n";
    }
    int code = medb_exit_code(status);
    if (output) {
        if (f.out.empty()) {
            std::cout << output;
        } else {
            std::ofstream o(f.out, std::ios::binary);
            o << output;
            if (!o) {
                std::cerr << "error: cannot write '" << f.out << "'\n";
                code = code ? code : 1;
            }
        }
    }
    if (status != MEDB_OK) std::cerr << "error (" << medb_status_name(status) << "): " << medb_last_error() << "\n";
    medb_free_string(output);
    medb_free_string(warnings);
    return code;
}
