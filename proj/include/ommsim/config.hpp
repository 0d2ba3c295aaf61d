#pragma once

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ommsim/sweep.hpp"

namespace ommsim {

/// One subsystem in configuration units: linear frequency in Hz
/// (value = omega / 2pi).
struct SubsystemConfig {
    double omega_a_hz = 10.0e9;
    double omega_m_hz = 10.0e9;
    double omega_b_hz = 40.0e6;
    double omega_c_hz = PhysicalConstants{}.c_light / 1550.0e-9;
    double kappa_a_hz = 1.5e6;
    double kappa_m_hz = 3.0e5;
    double kappa_c_hz = 3.0e6;
    double gamma_b_hz = 100.0;
    double g_a_hz = 4.0e6;
    double G_mb_hz = 4.2e6;
    double G_bc_hz = 4.8e6;

    bool operator==(const SubsystemConfig&) const = default;

    SubsystemParams to_params() const {
        SubsystemParams p;
        p.omega_a = two_pi * omega_a_hz;
        p.omega_m = two_pi * omega_m_hz;
        p.omega_b = two_pi * omega_b_hz;
        p.omega_c = two_pi * omega_c_hz;
        p.kappa_a = two_pi * kappa_a_hz;
        p.kappa_m = two_pi * kappa_m_hz;
        p.kappa_c = two_pi * kappa_c_hz;
        p.gamma_b = two_pi * gamma_b_hz;
        p.g_a = two_pi * g_a_hz;
        p.G_mb = two_pi * G_mb_hz;
        p.G_bc = two_pi * G_bc_hz;
        return p;
    }
};

/// Resolved run configuration. Defaults reproduce the reference
/// parameter set at the standard operating point.
struct RunConfig {
    SubsystemConfig sub1;
    SubsystemConfig sub2;
    double temperature_k = 10.0e-3;
    double squeeze_r = 1.0;
    double spin_density = 4.22e27;

    std::optional<std::string> preset;
    std::optional<std::string> axis1;
    std::optional<std::string> axis2;
    std::optional<std::string> pairs;
    std::optional<int> grid;
    int jobs = 1;
    std::optional<std::string> out;

    bool operator==(const RunConfig&) const = default;

    SystemParams system() const { return {sub1.to_params(), sub2.to_params()}; }
    EnvironmentParams environment() const { return {temperature_k, squeeze_r}; }
    PhysicalConstants constants() const {
        PhysicalConstants pc;
        pc.spin_density = spin_density;
        return pc;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view text, int line) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("line " + std::to_string(line) + ": malformed number '" +
                          std::string(text) + "'");
    return value;
}

/// key -> the config fields it addresses (two for symmetric keys).
inline std::map<std::string, std::vector<double*>, std::less<>> numeric_keys(RunConfig& c) {
    std::map<std::string, std::vector<double*>, std::less<>> keys;
    struct Field { const char* stem; double SubsystemConfig::*member; };
    const Field fields[] = {
        {"omega_a", &SubsystemConfig::omega_a_hz},
        {"omega_m", &SubsystemConfig::omega_m_hz},
        {"omega_b", &SubsystemConfig::omega_b_hz},
        {"omega_c", &SubsystemConfig::omega_c_hz},
        {"kappa_a", &SubsystemConfig::kappa_a_hz},
        {"kappa_m", &SubsystemConfig::kappa_m_hz},
        {"kappa_c", &SubsystemConfig::kappa_c_hz},
        {"gamma_b", &SubsystemConfig::gamma_b_hz},
        {"g_a", &SubsystemConfig::g_a_hz},
        {"G_mb", &SubsystemConfig::G_mb_hz},
        {"G_bc", &SubsystemConfig::G_bc_hz},
    };
    for (const Field& f : fields) {
        keys[std::string(f.stem) + "_hz"] = {&(c.sub1.*f.member), &(c.sub2.*f.member)};
        keys[std::string(f.stem) + "1_hz"] = {&(c.sub1.*f.member)};
        keys[std::string(f.stem) + "2_hz"] = {&(c.sub2.*f.member)};
    }
    keys["temperature_k"] = {&c.temperature_k};
    keys["r"] = {&c.squeeze_r};
    keys["spin_density"] = {&c.spin_density};
    return keys;
}

}  // namespace detail

inline SweepAxis parse_axis_spec(std::string_view text) {
    // name:lo:hi:count
    std::vector<std::string_view> parts;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i)
        if (i == text.size() || text[i] == ':') {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    if (parts.size() != 4)
        throw ConfigError("axis spec must be name:lo:hi:count, got '" + std::string(text) + "'");
    const std::optional<SweepParameter> param = parse_sweep_parameter(parts[0]);
    if (!param) throw ConfigError("unknown sweep parameter '" + std::string(parts[0]) + "'");
    SweepAxis axis;
    axis.param = *param;
    axis.lo = detail::parse_double(parts[1], 0);
    axis.hi = detail::parse_double(parts[2], 0);
    try {
        axis.count = static_cast<int>(std::stol(std::string(parts[3])));
    } catch (const std::exception&) {
        throw ConfigError("malformed axis point count '" + std::string(parts[3]) + "'");
    }
    if (axis.count < 2) throw ConfigError("axis point count must be >= 2");
    return axis;
}

inline std::vector<BipartitePair> parse_pairs(std::string_view text) {
    std::vector<BipartitePair> pairs;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i)
        if (i == text.size() || text[i] == ',') {
            const std::string_view name = detail::trim(text.substr(start, i - start));
            start = i + 1;
            if (name.empty()) continue;
            if (name == "microwave" || name == "a1a2") pairs.push_back(microwave_pair);
            else if (name == "magnon" || name == "m1m2") pairs.push_back(magnon_pair);
            else if (name == "phonon" || name == "b1b2") pairs.push_back(phonon_pair);
            else if (name == "optical" || name == "c1c2") pairs.push_back(optical_pair);
            else throw ConfigError("unknown mode pair '" + std::string(name) + "'");
        }
    if (pairs.empty()) throw ConfigError("empty mode pair list");
    return pairs;
}

/// Line-oriented `key = value` configuration with `#` comments.
/// Unknown keys are rejected; every violation reports its line number.
inline RunConfig parse_config(std::string_view text) {
    RunConfig config;
    auto keys = detail::numeric_keys(config);
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");

        if (auto it = keys.find(key); it != keys.end()) {
            const double v = detail::parse_double(value, line_no);
            if (!std::isfinite(v) || v < 0.0)
                throw ConfigError("line " + std::to_string(line_no) + ": " +
                                  std::string(key) + " must be finite and >= 0");
            for (double* field : it->second) *field = v;
        } else if (key == "preset") {
            config.preset = std::string(value);
        } else if (key == "axis1") {
            parse_axis_spec(value);  // fail early, keep the raw text
            config.axis1 = std::string(value);
        } else if (key == "axis2") {
            parse_axis_spec(value);
            config.axis2 = std::string(value);
        } else if (key == "pairs") {
            parse_pairs(value);
            config.pairs = std::string(value);
        } else if (key == "grid") {
            const double v = detail::parse_double(value, line_no);
            if (v < 2.0 || v != static_cast<int>(v))
                throw ConfigError("line " + std::to_string(line_no) + ": grid must be an integer >= 2");
            config.grid = static_cast<int>(v);
        } else if (key == "jobs") {
            const double v = detail::parse_double(value, line_no);
            if (v < 1.0 || v != static_cast<int>(v))
                throw ConfigError("line " + std::to_string(line_no) + ": jobs must be an integer >= 1");
            config.jobs = static_cast<int>(v);
        } else if (key == "out") {
            config.out = std::string(value);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
        }
    }
    if (config.spin_density <= 0.0) throw ConfigError("spin_density must be > 0");
    const Diagnostics d = validate_params(config.system(), config.environment());
    if (!d.ok()) throw ConfigError("invalid configuration: " + d.violations.front());
    return config;
}

namespace detail {

inline std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Inverse of parse_config up to formatting: parse(render(c)) == c.
inline std::string render_config(const RunConfig& config) {
    std::ostringstream out;
    auto emit_sub = [&out](const SubsystemConfig& s, const char* suffix) {
        struct Row { const char* stem; double value; };
        const Row rows[] = {
            {"omega_a", s.omega_a_hz}, {"omega_m", s.omega_m_hz},
            {"omega_b", s.omega_b_hz}, {"omega_c", s.omega_c_hz},
            {"kappa_a", s.kappa_a_hz}, {"kappa_m", s.kappa_m_hz},
            {"kappa_c", s.kappa_c_hz}, {"gamma_b", s.gamma_b_hz},
            {"g_a", s.g_a_hz},         {"G_mb", s.G_mb_hz},
            {"G_bc", s.G_bc_hz},
        };
        for (const Row& r : rows)
            out << r.stem << suffix << "_hz = " << detail::full_precision(r.value) << "\n";
    };
    emit_sub(config.sub1, "1");
    emit_sub(config.sub2, "2");
    out << "temperature_k = " << detail::full_precision(config.temperature_k) << "\n";
    out << "r = " << detail::full_precision(config.squeeze_r) << "\n";
    out << "spin_density = " << detail::full_precision(config.spin_density) << "\n";
    if (config.preset) out << "preset = " << *config.preset << "\n";
    if (config.axis1) out << "axis1 = " << *config.axis1 << "\n";
    if (config.axis2) out << "axis2 = " << *config.axis2 << "\n";
    if (config.pairs) out << "pairs = " << *config.pairs << "\n";
    if (config.grid) out << "grid = " << *config.grid << "\n";
    if (config.jobs != 1) out << "jobs = " << config.jobs << "\n";
    if (config.out) out << "out = " << *config.out << "\n";
    return out.str();
}

}  // namespace ommsim
