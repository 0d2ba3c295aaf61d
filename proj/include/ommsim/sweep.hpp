#pragma once

#include <array>
#include <cmath>
#include <ctime>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ommsim/entanglement.hpp"
#include "ommsim/version.hpp"

namespace ommsim {

/// Parameters a sweep axis can address. Plain names set both subsystems;
/// suffixed names address one subsystem (asymmetric sweeps).
enum class SweepParameter {
    G_mb, G_bc, g_a, r, T,
    G_mb1, G_mb2, G_bc1, G_bc2, g_a1, g_a2,
};

inline std::string_view sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::G_mb: return "G_mb";
        case SweepParameter::G_bc: return "G_bc";
        case SweepParameter::g_a: return "g_a";
        case SweepParameter::r: return "r";
        case SweepParameter::T: return "T";
        case SweepParameter::G_mb1: return "G_mb1";
        case SweepParameter::G_mb2: return "G_mb2";
        case SweepParameter::G_bc1: return "G_bc1";
        case SweepParameter::G_bc2: return "G_bc2";
        case SweepParameter::g_a1: return "g_a1";
        case SweepParameter::g_a2: return "g_a2";
    }
    return "?";
}

inline std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
    using SP = SweepParameter;
    for (SP p : {SP::G_mb, SP::G_bc, SP::g_a, SP::r, SP::T, SP::G_mb1, SP::G_mb2,
                 SP::G_bc1, SP::G_bc2, SP::g_a1, SP::g_a2})
        if (name == sweep_parameter_name(p)) return p;
    return std::nullopt;
}

/// Coupling axes are specified in linear frequency (Hz, value = omega/2pi);
/// T in kelvin; r dimensionless.
inline void apply_sweep_parameter(SystemParams& params, EnvironmentParams& env,
                                  SweepParameter p, double value) {
    const double w = two_pi * value;
    switch (p) {
        case SweepParameter::G_mb: params.sub1.G_mb = params.sub2.G_mb = w; break;
        case SweepParameter::G_bc: params.sub1.G_bc = params.sub2.G_bc = w; break;
        case SweepParameter::g_a: params.sub1.g_a = params.sub2.g_a = w; break;
        case SweepParameter::G_mb1: params.sub1.G_mb = w; break;
        case SweepParameter::G_mb2: params.sub2.G_mb = w; break;
        case SweepParameter::G_bc1: params.sub1.G_bc = w; break;
        case SweepParameter::G_bc2: params.sub2.G_bc = w; break;
        case SweepParameter::g_a1: params.sub1.g_a = w; break;
        case SweepParameter::g_a2: params.sub2.g_a = w; break;
        case SweepParameter::r: env.squeeze_r = value; break;
        case SweepParameter::T: env.temperature = value; break;
    }
}

struct SweepAxis {
    SweepParameter param = SweepParameter::G_mb;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;

    double coordinate(int i) const {
        return count < 2 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                         static_cast<double>(count - 1);
    }
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    SystemParams base;
    EnvironmentParams env;
    std::vector<BipartitePair> pairs;
};

inline void validate_spec(const SweepSpec& spec) {
    auto check_axis = [](const SweepAxis& ax) {
        if (ax.count < 2) throw ConfigError("sweep axis needs at least 2 points");
        if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi))
            throw ConfigError("sweep axis range must be finite");
    };
    check_axis(spec.axis1);
    if (spec.axis2) {
        check_axis(*spec.axis2);
        if (spec.axis2->param == spec.axis1.param)
            throw ConfigError("sweep axes must address distinct parameters");
    }
    if (spec.pairs.empty()) throw ConfigError("sweep needs at least one mode pair");
    const Diagnostics d = validate_params(spec.base, spec.env);
    if (!d.ok()) throw ConfigError("invalid base parameters: " + d.violations.front());
}

struct SweepPoint {
    double coord1 = 0.0;
    double coord2 = 0.0;  // unused for 1D sweeps
    bool stable = false;
    std::array<std::optional<double>, 4> entanglement;  // indexed by Mode
};

struct SweepResult {
    SweepSpec spec;
    std::string tool_version;
    std::string timestamp;           // UTC, when the sweep ran
    std::vector<SweepPoint> points;  // row-major, axis1 outer
};

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {

inline SweepPoint evaluate_grid_point(const SweepSpec& spec, double c1, double c2,
                                      bool has_axis2) {
    SweepPoint pt;
    pt.coord1 = c1;
    pt.coord2 = c2;
    SystemParams params = spec.base;
    EnvironmentParams env = spec.env;
    apply_sweep_parameter(params, env, spec.axis1.param, c1);
    if (has_axis2) apply_sweep_parameter(params, env, spec.axis2->param, c2);
    const SteadyState ss = solve_steady_state(params, env);
    pt.stable = ss.stable;
    if (ss.stable)
        for (const BipartitePair& pair : spec.pairs)
            pt.entanglement[static_cast<size_t>(pair.mode)] =
                log_negativity(extract_pair(ss.cm, pair));
    return pt;
}

}  // namespace detail

/// Evaluates the full grid. Points are independent; with jobs > 1 they are
/// processed by a small thread pool, gathered back in row-major order so
/// the output is identical regardless of concurrency.
inline SweepResult grid_sweep(const SweepSpec& spec, int jobs = 1) {
    validate_spec(spec);
    SweepResult result;
    result.spec = spec;
    result.tool_version = version_string;
    result.timestamp = utc_timestamp();
    const int n1 = spec.axis1.count;
    const int n2 = spec.axis2 ? spec.axis2->count : 1;
    result.points.resize(static_cast<size_t>(n1) * static_cast<size_t>(n2));

    auto run_range = [&](int begin, int stride) {
        for (int idx = begin; idx < n1 * n2; idx += stride) {
            const int i = idx / n2;
            const int j = idx % n2;
            const double c1 = spec.axis1.coordinate(i);
            const double c2 = spec.axis2 ? spec.axis2->coordinate(j) : 0.0;
            result.points[static_cast<size_t>(idx)] =
                detail::evaluate_grid_point(spec, c1, c2, spec.axis2.has_value());
        }
    };

    if (jobs <= 1) {
        run_range(0, 1);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<size_t>(jobs));
        for (int w = 0; w < jobs; ++w) workers.emplace_back(run_range, w, jobs);
        for (std::thread& t : workers) t.join();
    }
    return result;
}

/// Sweep presets mirroring the reference figures. Ranges scale with the
/// base rates, so overriding kappas keeps the presets meaningful.
inline SweepSpec figure_preset(std::string_view id,
                               const SystemParams& base = default_system(),
                               const EnvironmentParams& env = default_environment(),
                               int grid_n = 101) {
    SweepSpec spec;
    spec.base = base;
    spec.env = env;
    const double kappa_a_hz = base.sub1.kappa_a / two_pi;
    const double kappa_c_hz = base.sub1.kappa_c / two_pi;
    auto axis = [grid_n](SweepParameter p, double lo, double hi) {
        return SweepAxis{p, lo, hi, grid_n};
    };
    const std::array<BipartitePair, 4> by_figure = {optical_pair, phonon_pair,
                                                    magnon_pair, microwave_pair};
    if (id == "fig2a" || id == "fig2b" || id == "fig2c" || id == "fig2d") {
        spec.axis1 = axis(SweepParameter::G_mb, 0.0, 3.5 * kappa_a_hz);
        spec.axis2 = axis(SweepParameter::G_bc, 0.0, 3.5 * kappa_c_hz);
        spec.pairs = {by_figure[static_cast<size_t>(id.back() - 'a')]};
    } else if (id == "fig3a") {
        spec.axis1 = axis(SweepParameter::r, 0.0, 2.0);
        spec.axis2 = axis(SweepParameter::T, 0.0, 0.5);
        spec.pairs = {microwave_pair};
    } else if (id == "fig3b") {
        spec.axis1 = axis(SweepParameter::r, 0.0, 2.0);
        spec.pairs = {optical_pair, phonon_pair, magnon_pair, microwave_pair};
    } else if (id == "fig4a") {
        spec.axis1 = axis(SweepParameter::g_a1, 0.0, 5.0 * kappa_a_hz);
        spec.axis2 = axis(SweepParameter::g_a2, 0.0, 5.0 * kappa_a_hz);
        spec.pairs = {microwave_pair};
    } else if (id == "fig4b") {
        spec.axis1 = axis(SweepParameter::G_mb1, 0.0, 3.5 * kappa_a_hz);
        spec.axis2 = axis(SweepParameter::G_mb2, 0.0, 3.5 * kappa_a_hz);
        spec.pairs = {microwave_pair};
    } else if (id == "fig4c") {
        spec.axis1 = axis(SweepParameter::G_bc1, 0.0, 3.5 * kappa_c_hz);
        spec.axis2 = axis(SweepParameter::G_bc2, 0.0, 3.5 * kappa_c_hz);
        spec.pairs = {microwave_pair};
    } else if (id == "fig4d") {
        spec.axis1 = axis(SweepParameter::r, 0.0, 2.0);
        spec.axis2 = axis(SweepParameter::g_a, 0.0, 5.0 * kappa_a_hz);
        spec.pairs = {microwave_pair};
    } else {
        throw ConfigError("unknown preset: " + std::string(id));
    }
    return spec;
}

inline const std::array<std::string_view, 10> preset_ids = {
    "fig2a", "fig2b", "fig2c", "fig2d", "fig3a",
    "fig3b", "fig4a", "fig4b", "fig4c", "fig4d"};

struct OptimizeResult {
    SystemParams params;           // base with the optimal couplings applied
    std::vector<double> coords;    // Hz, one per free parameter
    double value = 0.0;            // E_N at the optimum
};

/// No stable point found within the search bounds.
struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coarse grid scan followed by coordinate-wise golden-section refinement
/// (until each interval shrinks below 1e-3 of its range). The best point
/// ever evaluated is tracked, so the result dominates the scan.
inline OptimizeResult optimize_max_entanglement(
    const SystemParams& base, const EnvironmentParams& env,
    const std::vector<SweepParameter>& free,
    const std::vector<std::pair<double, double>>& bounds,
    const BipartitePair& pair = microwave_pair) {
    if (free.empty()) throw ConfigError("optimize: no free parameters");
    if (bounds.size() != free.size())
        throw ConfigError("optimize: bounds/free size mismatch");
    for (SweepParameter p : free)
        if (p != SweepParameter::G_mb && p != SweepParameter::G_bc)
            throw ConfigError("optimize: free parameters must be G_mb or G_bc");
    for (auto [lo, hi] : bounds)
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
            throw ConfigError("optimize: invalid bounds");

    const size_t dim = free.size();
    auto evaluate = [&](const std::vector<double>& x) -> double {
        SystemParams params = base;
        EnvironmentParams e = env;
        for (size_t d = 0; d < dim; ++d)
            apply_sweep_parameter(params, e, free[d], x[d]);
        const std::optional<double> en = steady_state_entanglement(params, e, pair);
        return en ? *en : -1.0;  // unstable scores below any valid E_N
    };

    constexpr int coarse_n = 21;
    std::vector<double> best_x(dim);
    double best = -1.0;
    std::vector<int> idx(dim, 0);
    for (;;) {
        std::vector<double> x(dim);
        for (size_t d = 0; d < dim; ++d) {
            auto [lo, hi] = bounds[d];
            x[d] = lo + (hi - lo) * idx[d] / double(coarse_n - 1);
        }
        const double v = evaluate(x);
        if (v > best) { best = v; best_x = x; }
        size_t d = 0;
        while (d < dim && ++idx[d] == coarse_n) idx[d++] = 0;
        if (d == dim) break;
    }
    if (best < 0.0) throw SearchError("optimize: no stable point within bounds");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int round = 0; round < 3; ++round) {
        for (size_t d = 0; d < dim; ++d) {
            auto [blo, bhi] = bounds[d];
            if (bhi == blo) continue;  // degenerate bound: nothing to refine
            const double cell = (bhi - blo) / double(coarse_n - 1);
            double lo = std::max(blo, best_x[d] - cell);
            double hi = std::min(bhi, best_x[d] + cell);
            auto at = [&](double t) {
                std::vector<double> x = best_x;
                x[d] = t;
                const double v = evaluate(x);
                if (v > best) { best = v; best_x = x; }
                return v;
            };
            double c = hi - inv_phi * (hi - lo);
            double e = lo + inv_phi * (hi - lo);
            double fc = at(c), fe = at(e);
            while (hi - lo > 1.0e-3 * (bhi - blo)) {
                if (fc < fe) {
                    lo = c; c = e; fc = fe;
                    e = lo + inv_phi * (hi - lo); fe = at(e);
                } else {
                    hi = e; e = c; fe = fc;
                    c = hi - inv_phi * (hi - lo); fc = at(c);
                }
            }
        }
    }

    OptimizeResult result;
    result.coords = best_x;
    result.value = best;
    result.params = base;
    EnvironmentParams e = env;
    for (size_t d = 0; d < dim; ++d)
        apply_sweep_parameter(result.params, e, free[d], best_x[d]);
    return result;
}

struct ThresholdResult {
    enum class Status { Found, NotFound, NotApplicable };
    Status status = Status::NotFound;
    double temperature = 0.0;  // K, meaningful when Found
};

/// Smallest temperature at which the pair's E_N drops below 1e-6,
/// located by bisection on [env.temperature, t_max] to 1 mK.
inline ThresholdResult temperature_threshold(const SystemParams& base,
                                             const EnvironmentParams& env,
                                             const BipartitePair& pair,
                                             double t_max) {
    constexpr double dead = 1.0e-6;
    constexpr double tol = 1.0e-3;
    if (!(t_max > env.temperature))
        throw ConfigError("temperature_threshold: t_max must exceed the base temperature");
    auto en_at = [&](double t) {
        EnvironmentParams e = env;
        e.temperature = t;
        const std::optional<double> v = steady_state_entanglement(base, e, pair);
        if (!v) throw StabilityError("temperature_threshold: unstable parameters");
        return *v;
    };
    if (en_at(env.temperature) < dead) return {ThresholdResult::Status::NotApplicable, env.temperature};
    if (en_at(t_max) >= dead) return {ThresholdResult::Status::NotFound, t_max};
    double lo = env.temperature, hi = t_max;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (en_at(mid) < dead ? hi : lo) = mid;
    }
    return {ThresholdResult::Status::Found, 0.5 * (lo + hi)};
}

/// Fraction of the injected entanglement surviving at the output,
/// normalized to the E_N = 2r carried by an ideal two-mode squeezed input.
inline double transfer_efficiency(double e_out, double r) {
    if (!(r > 0.0)) throw std::domain_error("transfer_efficiency: r must be > 0");
    return e_out / (2.0 * r);
}

}  // namespace ommsim
