#pragma once

#include "medbounds/analysis.hpp"
#include "medbounds/error.hpp"

#include <sstream>
#include <string>

namespace fixtures {

// Male profile (BMI 28.5, Gender 1), x = 50, x* = 10, published logistic estimates.
inline medb::Vector6 published_theta() {
    medb::Vector6 t;
    t << -4.162, -4.962, -2.912, -3.712, -0.930, -1.610;
    return t;
}

inline medb::ContrastSpec male_contrast(double x = 50.0, double x_star = 10.0) {
    return {x, x_star, {{"BMI", 28.5}, {"Gender", 1.0}}};
}

inline medb::ModelPair published_models() { return medb::load_models(MEDB_DATA_DIR "/published_models.json"); }

inline medb::ThetaBundle published_bundle() {
    const auto m = published_models();
    return medb::theta_bundle(m.outcome, m.mediator, male_contrast());
}

inline medb::Dataset csv(const std::string& text, medb::ColumnMapping mapping = {}) {
    std::istringstream in(text);
    return medb::Dataset::parse_csv(in, mapping);
}

template <class F>
medb::ErrorKind error_kind(F&& f) {
    try {
        f();
    } catch (const medb::Error& e) {
        return e.kind();
    }
    throw std::runtime_error("expected an error");
}

}  // namespace fixtures
