#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ommsim/config.hpp"
#include "ommsim/sweep.hpp"

namespace ommsim {

/// Fixed column order of sweep CSV files.
inline constexpr const char* csv_header = "axis1,axis2,E_c1c2,E_b1b2,E_m1m2,E_a1a2,stable";

inline constexpr std::array<Mode, 4> csv_pair_order = {Mode::Optical, Mode::Phonon,
                                                       Mode::Magnon, Mode::Microwave};

/// 9 significant digits; enough to make determinism checkable as byte
/// equality without printing raw binary floats.
inline std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline void write_csv(const SweepResult& result, std::ostream& out) {
    out << csv_header << "\n";
    const bool has_axis2 = result.spec.axis2.has_value();
    for (const SweepPoint& pt : result.points) {
        out << format_value(pt.coord1) << ",";
        if (has_axis2) out << format_value(pt.coord2);
        for (Mode mode : csv_pair_order) {
            out << ",";
            const std::optional<double>& en = pt.entanglement[static_cast<size_t>(mode)];
            if (pt.stable && en) out << format_value(*en);
        }
        out << "," << (pt.stable ? "1" : "0") << "\n";
    }
}

inline nlohmann::json subsystem_json(const SubsystemConfig& s) {
    const SubsystemParams p = s.to_params();
    return {
        {"omega_a_hz", s.omega_a_hz}, {"omega_m_hz", s.omega_m_hz},
        {"omega_b_hz", s.omega_b_hz}, {"omega_c_hz", s.omega_c_hz},
        {"kappa_a_hz", s.kappa_a_hz}, {"kappa_m_hz", s.kappa_m_hz},
        {"kappa_c_hz", s.kappa_c_hz}, {"gamma_b_hz", s.gamma_b_hz},
        {"g_a_hz", s.g_a_hz},         {"G_mb_hz", s.G_mb_hz},
        {"G_bc_hz", s.G_bc_hz},
        {"angular_rad_s",
         {{"omega_a", p.omega_a}, {"omega_m", p.omega_m}, {"omega_b", p.omega_b},
          {"omega_c", p.omega_c}, {"kappa_a", p.kappa_a}, {"kappa_m", p.kappa_m},
          {"kappa_c", p.kappa_c}, {"gamma_b", p.gamma_b}, {"g_a", p.g_a},
          {"G_mb", p.G_mb}, {"G_bc", p.G_bc}}},
    };
}

inline nlohmann::json config_json(const RunConfig& config) {
    nlohmann::json j;
    j["sub1"] = subsystem_json(config.sub1);
    j["sub2"] = subsystem_json(config.sub2);
    j["environment"] = {{"temperature_k", config.temperature_k},
                        {"r", config.squeeze_r}};
    j["spin_density"] = config.spin_density;
    return j;
}

inline nlohmann::json axis_json(const SweepAxis& axis) {
    return {{"param", std::string(sweep_parameter_name(axis.param))},
            {"lo", axis.lo},
            {"hi", axis.hi},
            {"count", axis.count}};
}

/// Run manifest: resolved configuration echo plus a result summary;
/// enough to reproduce the run exactly.
inline nlohmann::json run_manifest(const std::string& command, const RunConfig& config,
                                   const SweepResult* result = nullptr) {
    nlohmann::json j;
    j["tool"] = "ommsim";
    j["version"] = version_string;
    j["timestamp"] = result ? result->timestamp : utc_timestamp();
    j["command"] = command;
    j["config"] = config_json(config);
    if (config.preset) j["preset"] = *config.preset;
    j["jobs"] = config.jobs;
    if (config.grid) j["grid"] = *config.grid;
    if (result) {
        nlohmann::json sweep;
        sweep["axis1"] = axis_json(result->spec.axis1);
        if (result->spec.axis2) sweep["axis2"] = axis_json(*result->spec.axis2);
        nlohmann::json pairs = nlohmann::json::array();
        for (const BipartitePair& p : result->spec.pairs)
            pairs.push_back(std::string(p.name()));
        sweep["pairs"] = pairs;
        j["sweep"] = sweep;

        nlohmann::json max_en;
        size_t unstable = 0;
        for (const BipartitePair& p : result->spec.pairs) {
            double best = 0.0;
            for (const SweepPoint& pt : result->points)
                if (const auto& en = pt.entanglement[static_cast<size_t>(p.mode)])
                    best = std::max(best, *en);
            max_en["E_" + std::string(p.name())] = best;
        }
        for (const SweepPoint& pt : result->points)
            if (!pt.stable) ++unstable;
        j["summary"] = {{"points", result->points.size()},
                        {"unstable_points", unstable},
                        {"max_entanglement", max_en}};
    }
    return j;
}

}  // namespace ommsim
