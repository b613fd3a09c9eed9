// config.hpp — plain-text `key = value` parameter files and their merge
// with command-line overrides. Recognized keys: omega0, gamma_l, gamma_r,
// temp_l, temp_r, occ_l, occ_r, x_l, x_r. '#' starts a comment; later
// occurrences of a key win.

#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sqfcs/model.hpp"

namespace sqfcs {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamConfig {
    std::optional<double> omega0;
    std::optional<double> gamma_l, gamma_r;
    std::optional<double> temp_l, temp_r;
    std::optional<double> occ_l, occ_r;
    std::optional<double> x_l, x_r;
};

inline constexpr std::array<std::string_view, 9> kConfigKeys = {
    "omega0", "gamma_l", "gamma_r", "temp_l", "temp_r",
    "occ_l",  "occ_r",   "x_l",     "x_r"};

namespace detail {

inline std::optional<double>* key_slot(ParamConfig& c, std::string_view key) {
    if (key == "omega0") return &c.omega0;
    if (key == "gamma_l") return &c.gamma_l;
    if (key == "gamma_r") return &c.gamma_r;
    if (key == "temp_l") return &c.temp_l;
    if (key == "temp_r") return &c.temp_r;
    if (key == "occ_l") return &c.occ_l;
    if (key == "occ_r") return &c.occ_r;
    if (key == "x_l") return &c.x_l;
    if (key == "x_r") return &c.x_r;
    return nullptr;
}

inline std::string trim(std::string s) {
    const auto notspace = [](unsigned char ch) { return !std::isspace(ch); };
    while (!s.empty() && !notspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
    while (!s.empty() && !notspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    return s;
}

}  // namespace detail

inline ParamConfig parse_config(std::istream& in,
                                const std::string& origin = "<config>") {
    ParamConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        auto* slot = detail::key_slot(c, key);
        if (slot == nullptr)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            *slot = v;
        } catch (const std::exception&) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": bad number '" + value + "'");
        }
    }
    return c;
}

inline ParamConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

/// Per-key override: values present in `over` win.
inline ParamConfig merge(ParamConfig base, const ParamConfig& over) {
    const auto take = [](std::optional<double>& dst,
                         const std::optional<double>& src) {
        if (src) dst = src;
    };
    take(base.omega0, over.omega0);
    take(base.gamma_l, over.gamma_l);
    take(base.gamma_r, over.gamma_r);
    take(base.temp_l, over.temp_l);
    take(base.temp_r, over.temp_r);
    take(base.occ_l, over.occ_l);
    take(base.occ_r, over.occ_r);
    take(base.x_l, over.x_l);
    take(base.x_r, over.x_r);
    return base;
}

/// Materialize model parameters. Defaults: omega0 = 0.5, gamma = 1, x = 0.
/// Each reservoir needs a temperature or an occupation (checked when the
/// rates are built).
inline ModelParams resolve(const ParamConfig& c) {
    ModelParams p;
    p.omega0 = c.omega0.value_or(0.5);
    p.left.gamma = c.gamma_l.value_or(1.0);
    p.right.gamma = c.gamma_r.value_or(1.0);
    p.left.temperature = c.temp_l;
    p.right.temperature = c.temp_r;
    p.left.occupation = c.occ_l;
    p.right.occupation = c.occ_r;
    p.left.squeeze = c.x_l.value_or(0.0);
    p.right.squeeze = c.x_r.value_or(0.0);
    return p;
}

}  // namespace sqfcs
