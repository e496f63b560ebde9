#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

// Frozen high-precision values, stored as decimal strings.
inline const nlohmann::json& oracle() {
    static const nlohmann::json j = [] {
        std::ifstream f(VEXNORM_TEST_ORACLE);
        return nlohmann::json::parse(f);
    }();
    return j;
}

inline double ov(const nlohmann::json& v) { return v.is_string() ? std::stod(v.get<std::string>()) : v.get<double>(); }
