#include "medbounds/scm.hpp"

#include "medbounds/error.hpp"
#include "medbounds/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace medb {

using json = nlohmann::json;

namespace {

constexpr double kNormTol = 1e-12;

void check_prob(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::invalid_input, "SCM: " + what + " = " + std::to_string(p) + " is not a probability");
}

void check_distribution(const std::vector<double>& probs, const std::string& what) {
    if (probs.empty()) fail(ErrorKind::invalid_input, "SCM: " + what + " is empty");
    for (double p : probs) check_prob(p, what);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > kNormTol)
        fail(ErrorKind::invalid_input, "SCM: " + what + " sums to " + std::to_string(total) + ", not 1");
}

}  // namespace

void StructuralModel::validate() const {
    if (c_support.empty()) fail(ErrorKind::invalid_input, "SCM: empty covariate support");
    std::vector<double> cp;
    for (const auto& c : c_support) {
        if (c.values.size() != covariate_names.size())
            fail(ErrorKind::invalid_input, "SCM: covariate profile length does not match covariate names");
        cp.push_back(c.prob);
    }
    check_distribution(cp, "c_support probabilities");
    check_distribution(u1_probs, "u1_probs");
    check_distribution(u2_probs, "u2_probs");
    if (exposure_grid.empty()) fail(ErrorKind::invalid_input, "SCM: empty exposure grid");
    const std::size_t K = exposure_grid.size(), C = c_support.size(), U1 = u1_probs.size(), U2 = u2_probs.size();

    if (x_prob.size() != C) fail(ErrorKind::invalid_input, "SCM: x_mechanism has wrong covariate dimension");
    for (const auto& byc : x_prob) {
        if (byc.size() != U1) fail(ErrorKind::invalid_input, "SCM: x_mechanism has wrong u1 dimension");
        for (const auto& dist : byc) {
            if (dist.size() != K) fail(ErrorKind::invalid_input, "SCM: x_mechanism has wrong exposure dimension");
            check_distribution(dist, "P(X | c, u1)");
        }
    }
    if (m_prob.size() != K) fail(ErrorKind::invalid_input, "SCM: m_mechanism has wrong exposure dimension");
    for (const auto& byk : m_prob) {
        if (byk.size() != C) fail(ErrorKind::invalid_input, "SCM: m_mechanism has wrong covariate dimension");
        for (const auto& byc : byk) {
            if (byc.size() != U2) fail(ErrorKind::invalid_input, "SCM: m_mechanism has wrong u2 dimension");
            for (double p : byc) check_prob(p, "P(M=1 | x, c, u2)");
        }
    }
    if (y_prob.size() != K) fail(ErrorKind::invalid_input, "SCM: y_mechanism has wrong exposure dimension");
    for (const auto& byk : y_prob) {
        if (byk.size() != 2) fail(ErrorKind::invalid_input, "SCM: y_mechanism needs two mediator levels");
        for (const auto& bym : byk) {
            if (bym.size() != C) fail(ErrorKind::invalid_input, "SCM: y_mechanism has wrong covariate dimension");
            for (const auto& byc : bym) {
                if (byc.size() != U1) fail(ErrorKind::invalid_input, "SCM: y_mechanism has wrong u1 dimension");
                for (const auto& byu1 : byc) {
                    if (byu1.size() != U2) fail(ErrorKind::invalid_input, "SCM: y_mechanism has wrong u2 dimension");
                    for (double p : byu1) check_prob(p, "P(Y=1 | x, m, c, u1, u2)");
                }
            }
        }
    }
}

std::size_t StructuralModel::exposure_index(double x) const {
    for (std::size_t k = 0; k < exposure_grid.size(); ++k)
        if (std::abs(exposure_grid[k] - x) <= 1e-12 * std::max(1.0, std::abs(x))) return k;
    fail(ErrorKind::invalid_input, "exposure level " + std::to_string(x) + " is not on the SCM exposure grid");
}

std::size_t StructuralModel::profile_index(const std::map<std::string, double, std::less<>>& profile) const {
    for (std::size_t c = 0; c < c_support.size(); ++c) {
        bool match = true;
        for (std::size_t j = 0; j < covariate_names.size() && match; ++j) {
            auto it = profile.find(covariate_names[j]);
            if (it == profile.end())
                fail(ErrorKind::invalid_input, "covariate profile lacks '" + covariate_names[j] + "'");
            match = std::abs(it->second - c_support[c].values[j]) <= 1e-9 * std::max(1.0, std::abs(it->second));
        }
        if (match) return c;
    }
    fail(ErrorKind::invalid_input, "covariate profile is not in the SCM covariate support");
}

std::map<std::string, double, std::less<>> StructuralModel::profile(std::size_t c) const {
    std::map<std::string, double, std::less<>> out;
    for (std::size_t j = 0; j < covariate_names.size(); ++j) out[covariate_names[j]] = c_support.at(c).values[j];
    return out;
}

CounterfactualLaw enumerate_counterfactuals(const StructuralModel& scm, const ContrastSpec& contrast) {
    const std::size_t k[2] = {scm.exposure_index(contrast.x), scm.exposure_index(contrast.x_star)};
    const std::size_t c = scm.profile_index(contrast.profile);
    CounterfactualLaw law;
    double m_mass[2][2] = {};  // P(M(b) = m')

    for (std::size_t u2 = 0; u2 < scm.u2_probs.size(); ++u2) {
        const double w2 = scm.u2_probs[u2];
        const double pm[2] = {scm.m_prob[k[0]][c][u2], scm.m_prob[k[1]][c][u2]};
        const double both = std::min(pm[0], pm[1]);
        law.m_joint[1][1] += w2 * both;
        law.m_joint[1][0] += w2 * (pm[0] - both);
        law.m_joint[0][1] += w2 * (pm[1] - both);
        law.m_joint[0][0] += w2 * (1.0 - std::max(pm[0], pm[1]));
        for (int b = 0; b < 2; ++b) {
            law.m[b] += w2 * pm[b];
            m_mass[b][1] += w2 * pm[b];
            m_mass[b][0] += w2 * (1.0 - pm[b]);
        }
        for (std::size_t u1 = 0; u1 < scm.u1_probs.size(); ++u1) {
            const double w = scm.u1_probs[u1] * w2;
            for (int a = 0; a < 2; ++a) {
                const double y0 = scm.y_prob[k[a]][0][c][u1][u2];
                const double y1 = scm.y_prob[k[a]][1][c][u1][u2];
                law.y_fixed[a][0] += w * y0;
                law.y_fixed[a][1] += w * y1;
                for (int b = 0; b < 2; ++b) {
                    law.y_cross[a][b] += w * ((1.0 - pm[b]) * y0 + pm[b] * y1);
                    law.y_given_m[a][0][b][0] += w * (1.0 - pm[b]) * y0;
                    law.y_given_m[a][0][b][1] += w * pm[b] * y0;
                    law.y_given_m[a][1][b][0] += w * (1.0 - pm[b]) * y1;
                    law.y_given_m[a][1][b][1] += w * pm[b] * y1;
                }
            }
        }
    }
    for (int a = 0; a < 2; ++a)
        for (int m = 0; m < 2; ++m)
            for (int b = 0; b < 2; ++b)
                for (int mp = 0; mp < 2; ++mp)
                    law.y_given_m[a][m][b][mp] = m_mass[b][mp] > 0.0 ? law.y_given_m[a][m][b][mp] / m_mass[b][mp]
                                                                    : std::numeric_limits<double>::quiet_NaN();

    // Forward propagation under do(X = a): draw U, then M from its mechanism, then Y.
    for (int a = 0; a < 2; ++a) {
        double total = 0.0;
        for (std::size_t u1 = 0; u1 < scm.u1_probs.size(); ++u1)
            for (std::size_t u2 = 0; u2 < scm.u2_probs.size(); ++u2) {
                const double pm = scm.m_prob[k[a]][c][u2];
                total += scm.u1_probs[u1] * scm.u2_probs[u2] *
                         (pm * scm.y_prob[k[a]][1][c][u1][u2] + (1.0 - pm) * scm.y_prob[k[a]][0][c][u1][u2]);
            }
        law.y_total[a] = total;
    }
    return law;
}

namespace {

double checked_logit(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        fail(ErrorKind::degenerate, std::string("degenerate probability for ") + what + ": log odds undefined");
    return logit(p);
}

}  // namespace

EffectTriple true_effects(const StructuralModel& scm, const ContrastSpec& contrast) {
    const auto law = enumerate_counterfactuals(scm, contrast);
    const double cross = checked_logit(law.y_cross[0][1], "P(Y(x, M(x*)) = 1)");
    const double active = checked_logit(law.y_cross[0][0], "P(Y(x, M(x)) = 1)");
    const double reference = checked_logit(law.y_cross[1][1], "P(Y(x*, M(x*)) = 1)");
    return EffectTriple(cross - reference, active - cross);
}

double observed_p_mediator(const StructuralModel& scm, std::size_t k, std::size_t c) {
    double p = 0.0;
    for (std::size_t u2 = 0; u2 < scm.u2_probs.size(); ++u2) p += scm.u2_probs[u2] * scm.m_prob[k][c][u2];
    return p;
}

double observed_p_outcome(const StructuralModel& scm, std::size_t k, int m, std::size_t c) {
    double z1 = 0.0;
    for (std::size_t u1 = 0; u1 < scm.u1_probs.size(); ++u1) z1 += scm.u1_probs[u1] * scm.x_prob[c][u1][k];
    double z2 = 0.0;
    for (std::size_t u2 = 0; u2 < scm.u2_probs.size(); ++u2) {
        const double pm = scm.m_prob[k][c][u2];
        z2 += scm.u2_probs[u2] * (m ? pm : 1.0 - pm);
    }
    if (!(z1 > 0.0) || !(z2 > 0.0))
        fail(ErrorKind::degenerate, "observational conditional P(Y | X, M, C) undefined: conditioning event has probability 0");
    double p = 0.0;
    for (std::size_t u1 = 0; u1 < scm.u1_probs.size(); ++u1) {
        const double w1 = scm.u1_probs[u1] * scm.x_prob[c][u1][k] / z1;
        for (std::size_t u2 = 0; u2 < scm.u2_probs.size(); ++u2) {
            const double pm = scm.m_prob[k][c][u2];
            const double w2 = scm.u2_probs[u2] * (m ? pm : 1.0 - pm) / z2;
            p += w1 * w2 * scm.y_prob[k][m][c][u1][u2];
        }
    }
    return p;
}

ThetaBundle observational_theta(const StructuralModel& scm, const ContrastSpec& contrast) {
    const std::size_t kx = scm.exposure_index(contrast.x);
    const std::size_t ks = scm.exposure_index(contrast.x_star);
    const std::size_t c = scm.profile_index(contrast.profile);
    Vector6 theta;
    theta << checked_logit(observed_p_outcome(scm, kx, 0, c), "P(Y=1 | x, M=0, c)"),
        checked_logit(observed_p_outcome(scm, ks, 0, c), "P(Y=1 | x*, M=0, c)"),
        checked_logit(observed_p_outcome(scm, kx, 1, c), "P(Y=1 | x, M=1, c)"),
        checked_logit(observed_p_outcome(scm, ks, 1, c), "P(Y=1 | x*, M=1, c)"),
        checked_logit(observed_p_mediator(scm, kx, c), "P(M=1 | x, c)"),
        checked_logit(observed_p_mediator(scm, ks, c), "P(M=1 | x*, c)");
    return ThetaBundle(theta);
}

double mediation_formula(const StructuralModel& scm, const ContrastSpec& contrast, LevelPair pair) {
    const std::size_t c = scm.profile_index(contrast.profile);
    const double a_level = pair == LevelPair::reference_reference ? contrast.x_star : contrast.x;
    const double b_level = pair == LevelPair::active_active ? contrast.x : contrast.x_star;
    const std::size_t ka = scm.exposure_index(a_level);
    const std::size_t kb = scm.exposure_index(b_level);
    const double pm = observed_p_mediator(scm, kb, c);
    return (1.0 - pm) * observed_p_outcome(scm, ka, 0, c) + pm * observed_p_outcome(scm, ka, 1, c);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

template <class Probs>
std::size_t draw_index(const Probs& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;
}

}  // namespace

Dataset sample_dataset(const StructuralModel& scm, std::size_t n, std::uint64_t seed) {
    if (n == 0) fail(ErrorKind::invalid_input, "sample size must be at least 1");
    scm.validate();
    std::vector<double> cprobs;
    for (const auto& c : scm.c_support) cprobs.push_back(c.prob);

    UniformStream uniform(derive_seed(seed, 0));
    std::vector<Record> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = draw_index(cprobs, uniform());
        const std::size_t u1 = draw_index(scm.u1_probs, uniform());
        const std::size_t u2 = draw_index(scm.u2_probs, uniform());
        const std::size_t k = draw_index(scm.x_prob[c][u1], uniform());
        Record r;
        r.exposure = scm.exposure_grid[k];
        r.mediator = uniform() < scm.m_prob[k][c][u2] ? 1 : 0;
        r.outcome = uniform() < scm.y_prob[k][static_cast<std::size_t>(r.mediator)][c][u1][u2] ? 1 : 0;
        r.covariates = scm.c_support[c].values;
        rows.push_back(std::move(r));
    }
    ColumnMapping mapping{"Y", "M", "X", scm.covariate_names};
    return Dataset(std::move(mapping), std::move(rows));
}

// ---------------------------------------------------------------------------
// JSON schema

namespace {

double covariate_term(const json& coefs, const StructuralModel& scm, std::size_t c) {
    double s = 0.0;
    if (!coefs.is_object()) return s;
    for (auto it = coefs.begin(); it != coefs.end(); ++it) {
        auto pos = std::find(scm.covariate_names.begin(), scm.covariate_names.end(), it.key());
        if (pos == scm.covariate_names.end()) fail(ErrorKind::invalid_input, "SCM: unknown covariate '" + it.key() + "'");
        s += it.value().get<double>() * scm.c_support[c].values[static_cast<std::size_t>(pos - scm.covariate_names.begin())];
    }
    return s;
}

double shift(const json& spec, const char* key, std::size_t idx, std::size_t size) {
    if (!spec.contains(key)) return 0.0;
    const auto v = spec.at(key).get<std::vector<double>>();
    if (v.size() != size) fail(ErrorKind::invalid_input, std::string("SCM: '") + key + "' must have one entry per latent level");
    return v[idx];
}

}  // namespace

StructuralModel parse_scm(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::invalid_input, std::string("SCM config is not valid JSON: ") + e.what());
    }
    try {
        StructuralModel scm;
        scm.covariate_names = j.value("covariates", std::vector<std::string>{});
        const auto& cs = j.at("c_support");
        if (cs.is_array()) {
            for (const auto& e : cs) scm.c_support.push_back({e.at("values").get<std::vector<double>>(), e.at("prob").get<double>()});
            if (scm.covariate_names.empty() && !scm.c_support.empty() && !scm.c_support.front().values.empty())
                fail(ErrorKind::invalid_input, "SCM: 'covariates' names are required with explicit c_support");
        } else {
            const auto& prod = cs.at("product");
            if (scm.covariate_names.empty())
                for (auto it = prod.begin(); it != prod.end(); ++it) scm.covariate_names.push_back(it.key());
            scm.c_support.push_back({{}, 1.0});
            for (const auto& name : scm.covariate_names) {
                const auto vals = prod.at(name).at("values").get<std::vector<double>>();
                const auto probs = prod.at(name).at("probs").get<std::vector<double>>();
                if (vals.size() != probs.size() || vals.empty())
                    fail(ErrorKind::invalid_input, "SCM: covariate '" + name + "' values/probs mismatch");
                std::vector<CovariateProfile> next;
                for (const auto& base : scm.c_support)
                    for (std::size_t i = 0; i < vals.size(); ++i) {
                        auto p = base;
                        p.values.push_back(vals[i]);
                        p.prob *= probs[i];
                        next.push_back(std::move(p));
                    }
                scm.c_support = std::move(next);
            }
        }
        scm.u1_probs = j.value("u1_probs", std::vector<double>{1.0});
        scm.u2_probs = j.value("u2_probs", std::vector<double>{1.0});
        scm.exposure_grid = j.at("exposure_grid").get<std::vector<double>>();
        const std::size_t K = scm.exposure_grid.size(), C = scm.c_support.size();
        const std::size_t U1 = scm.u1_probs.size(), U2 = scm.u2_probs.size();

        const auto& xm = j.at("x_mechanism");
        if (xm.contains("table")) {
            scm.x_prob = xm.at("table").get<decltype(scm.x_prob)>();
        } else {
            // P(X = x_k | c, u1) proportional to exp(x_k * slope(c, u1))
            const auto& s = xm.at("scores");
            scm.x_prob.assign(C, std::vector<std::vector<double>>(U1, std::vector<double>(K)));
            for (std::size_t c = 0; c < C; ++c)
                for (std::size_t u1 = 0; u1 < U1; ++u1) {
                    const double slope = s.value("x", 0.0) + covariate_term(s.value("x_covariates", json::object()), scm, c) +
                                         shift(s, "x_u1", u1, U1);
                    std::vector<double> w(K);
                    for (std::size_t k = 0; k < K; ++k) w[k] = slope * (scm.exposure_grid[k] - scm.exposure_grid[0]);
                    const double top = *std::max_element(w.begin(), w.end());
                    double total = 0.0;
                    for (auto& v : w) total += (v = std::exp(v - top));
                    for (std::size_t k = 0; k < K; ++k) scm.x_prob[c][u1][k] = w[k] / total;
                }
        }

        const auto& mm = j.at("m_mechanism");
        if (mm.contains("table")) {
            scm.m_prob = mm.at("table").get<decltype(scm.m_prob)>();
        } else {
            const auto& s = mm.at("logistic");
            scm.m_prob.assign(K, std::vector<std::vector<double>>(C, std::vector<double>(U2)));
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t c = 0; c < C; ++c)
                    for (std::size_t u2 = 0; u2 < U2; ++u2)
                        scm.m_prob[k][c][u2] = expit(s.value("intercept", 0.0) + s.value("x", 0.0) * scm.exposure_grid[k] +
                                                     covariate_term(s.value("covariates", json::object()), scm, c) +
                                                     shift(s, "u2", u2, U2));
        }

        const auto& ym = j.at("y_mechanism");
        if (ym.contains("table")) {
            scm.y_prob = ym.at("table").get<decltype(scm.y_prob)>();
        } else {
            const auto& s = ym.at("logistic");
            scm.y_prob.assign(K, std::vector<std::vector<std::vector<std::vector<double>>>>(
                                     2, std::vector<std::vector<std::vector<double>>>(
                                            C, std::vector<std::vector<double>>(U1, std::vector<double>(U2)))));
            for (std::size_t k = 0; k < K; ++k)
                for (int m = 0; m < 2; ++m)
                    for (std::size_t c = 0; c < C; ++c)
                        for (std::size_t u1 = 0; u1 < U1; ++u1)
                            for (std::size_t u2 = 0; u2 < U2; ++u2) {
                                const double x = scm.exposure_grid[k];
                                scm.y_prob[k][static_cast<std::size_t>(m)][c][u1][u2] =
                                    expit(s.value("intercept", 0.0) + s.value("x", 0.0) * x + s.value("m", 0.0) * m +
                                          s.value("xm", 0.0) * x * m +
                                          covariate_term(s.value("covariates", json::object()), scm, c) +
                                          shift(s, "u1", u1, U1) + shift(s, "u2", u2, U2));
                            }
        }
        scm.validate();
        return scm;
    } catch (const json::exception& e) {
        fail(ErrorKind::invalid_input, std::string("SCM config: ") + e.what());
    }
}

StructuralModel load_scm(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open SCM file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scm(ss.str());
}

std::string scm_to_json(const StructuralModel& scm) {
    json j;
    j["covariates"] = scm.covariate_names;
    j["c_support"] = json::array();
    for (const auto& c : scm.c_support) j["c_support"].push_back({{"values", c.values}, {"prob", c.prob}});
    j["u1_probs"] = scm.u1_probs;
    j["u2_probs"] = scm.u2_probs;
    j["exposure_grid"] = scm.exposure_grid;
    j["x_mechanism"] = {{"table", scm.x_prob}};
    j["m_mechanism"] = {{"table", scm.m_prob}};
    j["y_mechanism"] = {{"table", scm.y_prob}};
    return j.dump(1);
}

StructuralModel cun_like_scm() {
    // BMI: binomial(6, 1/2) weights on mean + (k - 3) * sd / sqrt(1.5) reproduce mean and SD exactly.
    const double mean = 27.564, sd = 4.443;
    json bmi_values = json::array(), bmi_probs = json::array();
    const double weights[7] = {1, 6, 15, 20, 15, 6, 1};
    for (int k = 0; k < 7; ++k) {
        bmi_values.push_back(mean + (k - 3) * sd / std::sqrt(1.5));
        bmi_probs.push_back(weights[k] / 64.0);
    }
    std::vector<double> grid;
    for (int x = 10; x <= 170; x += 10) grid.push_back(x);

    json j = {
        {"covariates", {"BMI", "Gender"}},
        {"c_support",
         {{"product", {{"BMI", {{"values", bmi_values}, {"probs", bmi_probs}}},
                       {"Gender", {{"values", {0.0, 1.0}}, {"probs", {0.275, 0.725}}}}}}}},
        {"exposure_grid", grid},
        {"x_mechanism", {{"scores", {{"x", -0.042}, {"x_covariates", {{"Gender", 0.007}}}}}}},
        {"m_mechanism",
         {{"logistic", {{"intercept", 0.418}, {"x", 0.017}, {"covariates", {{"BMI", -0.098}, {"Gender", 0.595}}}}}}},
        {"y_mechanism",
         {{"logistic",
           {{"intercept", -3.925}, {"x", 0.020}, {"m", 1.250}, {"covariates", {{"BMI", -0.064}, {"Gender", 0.587}}}}}}},
    };
    return parse_scm(j.dump());
}

StructuralModel pccwd_counterexample_scm() {
    // Three equiprobable U2 levels. P(M=1 | x, u2) is (0.2, 0.5, 0.8) at x=1 and
    // (0.5, 0.2, 0.8) at x=0: equal mass on levels {0,1} and on level 2 under both
    // interventions. Y depends on U2 only through "level 2 or not", so conditioning
    // on M(x*)=m or M(x)=m gives the same law, while M(x*)=1-m does not.
    StructuralModel scm;
    scm.c_support = {{{}, 1.0}};
    scm.u1_probs = {1.0};
    scm.u2_probs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    scm.u2_probs[2] = 1.0 - scm.u2_probs[0] - scm.u2_probs[1];
    scm.exposure_grid = {0.0, 1.0};
    scm.x_prob = {{{0.5, 0.5}}};
    scm.m_prob = {{{0.5, 0.2, 0.8}}, {{0.2, 0.5, 0.8}}};
    auto level = [](double t, double s) { return std::vector<std::vector<std::vector<double>>>{{{t, t, s}}}; };
    scm.y_prob = {{level(0.2, 0.4), level(0.35, 0.55)}, {level(0.3, 0.6), level(0.5, 0.7)}};
    scm.validate();
    return scm;
}

}  // namespace medb
