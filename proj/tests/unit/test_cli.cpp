#include "fixtures.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace medb;
using nlohmann::json;

namespace {

const std::string kData = MEDB_DATA_DIR;

AnalysisConfig config(const std::string& text) { return AnalysisConfig::from_json(text, kData); }

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::string& args) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto out = dir / "medb_cli_out.txt", err = dir / "medb_cli_err.txt";
    const std::string cmd = std::string(MEDB_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(out), read(err)};
}

const char* kPublishedMale =
    R"({"models": "published_models.json", "contrast": {"x": [50], "x_star": 10,
        "profiles": [{"name": "male", "values": {"BMI": 28.5, "Gender": 1}}]}})";

}  // namespace

TEST_CASE("config parsing") {
    const auto c = config(R"({"data": "synthetic_cun.csv", "contrast": {"x_range": {"from": 10, "to": 50, "step": 20}},
                              "alpha": 0.1, "format": "csv", "seed": 7})");
    CHECK(c.data_path == kData + "/synthetic_cun.csv");
    CHECK(c.x_values == std::vector<double>{10, 30, 50});
    CHECK(c.x_star == 10.0);
    CHECK(c.alpha == 0.1);
    CHECK(c.seed == 7);
    CHECK(fixtures::error_kind([] { config(R"({"alpha": 1.5})"); }) == ErrorKind::invalid_input);
    CHECK(fixtures::error_kind([] { config(R"({"contrast": {"x_star": [10, 20]}})"); }) == ErrorKind::invalid_input);
    CHECK(fixtures::error_kind([] { config(R"({"colums": {}})"); }) == ErrorKind::invalid_input);
    CHECK(fixtures::error_kind([] { config(R"({"format": "xml"})"); }) == ErrorKind::invalid_input);
    CHECK(fixtures::error_kind([] { config("[1,"); }) == ErrorKind::invalid_input);
}

TEST_CASE("default profiles") {
    const auto p = default_profiles({"Y", "M", "X", {"bmi", "GENDER"}});
    REQUIRE(p.size() == 2);
    CHECK(p[0].name == "female");
    CHECK(p[0].values.at("bmi") == 25.05);
    CHECK(p[1].values.at("GENDER") == 1.0);
    CHECK(default_profiles({}).size() == 1);
    CHECK(fixtures::error_kind([] { default_profiles({"Y", "M", "X", {"age"}}); }) == ErrorKind::invalid_input);
}

TEST_CASE("fit output follows the est. / s.e. / p-value layout") {
    const auto res = run_command("fit", config(R"({"data": "synthetic_cun.csv",
        "columns": {"covariates": ["BMI", "Gender"]}})"));
    CHECK(res.output.find("Mediator     est.   s.e.  p-value") != std::string::npos);
    CHECK(res.output.find("Outcome") != std::string::npos);
    CHECK(res.output.find("Intercept") != std::string::npos);
}

TEST_CASE("saved model file reproduces the fit bit for bit") {
    const auto cfg = config(R"({"data": "synthetic_cun.csv", "columns": {"covariates": ["BMI", "Gender"]}, "format": "json"})");
    const auto first = run_command("fit", cfg).output;
    CHECK(first == run_command("fit", cfg).output);
    const auto reloaded = models_to_json(parse_models(first));
    CHECK(json::parse(reloaded)["outcome"]["coefficients"] == json::parse(first)["outcome"]["coefficients"]);
    CHECK(json::parse(reloaded)["mediator"]["covariance"] == json::parse(first)["mediator"]["covariance"]);
}

TEST_CASE("published estimates injected: male, x = 50") {
    const auto models = fixtures::published_models();
    Warnings w;
    const auto rows = evaluate_contrasts(models, config(kPublishedMale), &w);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].bounds.nde.lower == doctest::Approx(0.5796).epsilon(5e-4));
    CHECK(rows[0].bounds.nde.upper == doctest::Approx(1.0206).epsilon(5e-4));
    CHECK(w.empty());
    const auto out = run_command("curve", config(kPublishedMale)).output;
    CHECK(out.find("0.5795") != std::string::npos);
}

TEST_CASE("curve rows: order, invariants, reference row") {
    auto cfg = config(R"({"models": "published_models.json", "contrast": {"x": [10, 30, 20, 90]}})");
    Warnings w;
    const auto rows = evaluate_contrasts(fixtures::published_models(), cfg, &w);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].profile == "female");
    CHECK(rows[4].profile == "male");
    CHECK(rows[1].x == 30.0);
    CHECK(rows[2].x == 20.0);
    for (const auto& r : rows) {
        CHECK(r.bounds.nde.contains(r.point.nde()));
        CHECK(r.bounds.nie.contains(r.point.nie()));
        CHECK(r.bounds.te.contains(r.point.te()));
        CHECK(r.intervals.nde.contains(r.bounds.nde));
        CHECK(r.intervals.nie.contains(r.bounds.nie));
        CHECK(r.intervals.te.contains(r.bounds.te));
    }
    CHECK(rows[0].point.nde() == 0.0);
    CHECK(rows[0].point.te() == 0.0);
    CHECK(rows[0].bounds.nde.lower < 0.0);
    CHECK(rows[0].bounds.nde.upper > 0.0);
    CHECK(rows[0].bounds.te.lower < 0.0);
    CHECK(rows[0].bounds.te.upper > 0.0);
}

TEST_CASE("x_star outside the exposure support warns") {
    auto cfg = config(kPublishedMale);
    cfg.x_star = 500.0;
    Warnings w;
    evaluate_contrasts(fixtures::published_models(), cfg, &w);
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("outside") != std::string::npos);
}

TEST_CASE("empty data file is an ingestion error") {
    const auto empty = std::filesystem::temp_directory_path() / "medb_empty.csv";
    std::ofstream(empty) << "";
    CHECK(fixtures::error_kind([&] {
              run_command("fit", AnalysisConfig::from_json(json{{"data", empty.string()}}.dump()));
          }) == ErrorKind::invalid_input);
}

TEST_CASE("simulate and outputs are deterministic") {
    const auto cfg = config(R"({"simulate": {"n": 300}, "seed": 4})");
    CHECK(run_command("simulate", cfg).output == run_command("simulate", cfg).output);
    const auto c2 = config(R"({"models": "published_models.json", "format": "json", "contrast": {"x": [20, 40]}})");
    CHECK(run_command("bounds", c2).output == run_command("bounds", c2).output);
    CHECK(fixtures::error_kind([] { run_command("plot", AnalysisConfig{}); }) == ErrorKind::invalid_input);
}

TEST_CASE("command line: exit codes and overrides") {
    auto r = cli("curve --models " + kData + "/published_models.json --x 50 --x-star 10 --profile BMI=28.5 "
                 "--profile Gender=1 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.find("custom,50,10,0.7950911858") != std::string::npos);

    const auto empty = std::filesystem::temp_directory_path() / "medb_empty2.csv";
    std::ofstream(empty) << "";
    r = cli("fit --data " + empty.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("empty") != std::string::npos);

    r = cli("bounds --models " + kData + "/published_models.json --alpha 0");
    CHECK(r.code == 1);
    r = cli("frobnicate");
    CHECK(r.code == 1);
    r = cli("effects --models " + kData + "/published_models.json --x 50 --x-star 900 --profile BMI=28.5 --profile Gender=1");
    CHECK(r.code == 0);
    CHECK(r.err.find("warning: x_star") != std::string::npos);

    // separation is a numerical failure
    const auto sep = std::filesystem::temp_directory_path() / "medb_sep.csv";
    std::ofstream(sep) << "Y,M,X\n0,0,1\n1,1,2\n0,0,3\n1,1,4\n1,1,1\n0,0,2\n1,1,3\n0,0,5\n";
    r = cli("fit --data " + sep.string());
    CHECK(r.code == 2);
}

TEST_CASE("command line: validate is reproducible; --out writes a file") {
    const auto cfg = std::filesystem::temp_directory_path() / "medb_validate.json";
    std::ofstream(cfg) << R"({"validate": {"random_thetas": 10, "sweep_points": 501, "derivative_thetas": 5,
                              "random_scms": 10, "coverage_replicates": 5, "coverage_n": 1500}})";
    const auto out = std::filesystem::temp_directory_path() / "medb_validate_out.json";
    auto a = cli("validate --config " + cfg.string() + " --format json --seed 3 --out " + out.string());
    CHECK(a.code == 0);
    const auto first = read(out);
    CHECK(json::parse(first)["passed"] == true);
    a = cli("validate --config " + cfg.string() + " --format json --seed 3");
    CHECK(a.out == first);
}
