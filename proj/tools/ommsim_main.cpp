// ommsim command-line front end: evaluate a single operating point, run
// figure presets or custom sweeps, optimize couplings, and locate the
// entanglement survival temperature. Sweeps emit CSV plus a JSON manifest.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ommsim/ommsim.hpp"

namespace {

using namespace ommsim;

RunConfig load_config(const std::string& path) {
    if (path.empty()) return RunConfig{};
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void write_manifest(const std::string& csv_path, const nlohmann::json& manifest) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".manifest.json");
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write manifest: " + p.string());
    out << manifest.dump(2) << "\n";
}

int run_point(const RunConfig& config, const std::string& out_path) {
    const SystemParams params = config.system();
    const EnvironmentParams env = config.environment();
    const SteadyState ss = solve_steady_state(params, env, config.constants());
    nlohmann::json summary;
    summary["stable"] = ss.stable;
    summary["spectral_abscissa_rad_s"] = ss.abscissa;
    std::printf("stable              %s\n", ss.stable ? "yes" : "no");
    std::printf("spectral_abscissa   %.9g rad/s\n", ss.abscissa);
    if (ss.stable) {
        const std::vector<double> nu = symplectic_eigenvalues(ss.cm);
        std::printf("min_symplectic_ev   %.9g\n", nu.front());
        summary["min_symplectic_eigenvalue"] = nu.front();
        double e_microwave = 0.0;
        for (const BipartitePair& pair :
             {optical_pair, phonon_pair, magnon_pair, microwave_pair}) {
            const double en = log_negativity(extract_pair(ss.cm, pair));
            if (pair.mode == Mode::Microwave) e_microwave = en;
            std::printf("E_%s              %.9g\n", std::string(pair.name()).c_str(), en);
            summary["E_" + std::string(pair.name())] = en;
        }
        if (env.squeeze_r > 0.0) {
            const double eff = transfer_efficiency(e_microwave, env.squeeze_r);
            std::printf("transfer_efficiency %.9g\n", eff);
            summary["transfer_efficiency"] = eff;
        } else {
            std::printf("transfer_efficiency n/a (r = 0)\n");
        }
    } else {
        std::printf("no stationary state at this operating point\n");
    }
    if (!out_path.empty()) {
        nlohmann::json m = run_manifest("point", config);
        m["summary"] = summary;
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write manifest: " + out_path);
        out << m.dump(2) << "\n";
    }
    return 0;
}

SweepSpec spec_from_config(const RunConfig& config, const std::string& preset,
                           const std::string& axis1, const std::string& axis2,
                           const std::string& pairs, int grid) {
    if (!preset.empty()) {
        const int n = grid > 0 ? grid : config.grid.value_or(101);
        return figure_preset(preset, config.system(), config.environment(), n);
    }
    if (axis1.empty())
        throw ConfigError("sweep needs either --preset or --axis1");
    SweepSpec spec;
    spec.base = config.system();
    spec.env = config.environment();
    spec.axis1 = parse_axis_spec(axis1);
    if (!axis2.empty()) spec.axis2 = parse_axis_spec(axis2);
    spec.pairs = pairs.empty()
                     ? std::vector<BipartitePair>{optical_pair, phonon_pair,
                                                  magnon_pair, microwave_pair}
                     : parse_pairs(pairs);
    return spec;
}

int run_sweep(const RunConfig& config, const SweepSpec& spec, const std::string& out_path) {
    const SweepResult result = grid_sweep(spec, config.jobs);
    if (out_path.empty()) {
        write_csv(result, std::cout);
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + out_path);
    write_csv(result, out);
    out.flush();
    if (!out) throw ConfigError("write failed: " + out_path);
    write_manifest(out_path, run_manifest("sweep", config, &result));
    std::printf("wrote %zu rows to %s\n", result.points.size(), out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state entanglement of a dual opto-magnomechanical network"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --config after the subcommand name

    std::string config_path, out_path, preset, axis1, axis2, pairs;
    int grid = 0, jobs = 0;
    app.add_option("--config", config_path, "key = value configuration file");

    CLI::App* point = app.add_subcommand("point", "evaluate the configured operating point");
    point->add_option("--out", out_path, "write a JSON manifest next to this path");

    CLI::App* sweep = app.add_subcommand("sweep", "run a grid sweep, write CSV + manifest");
    sweep->add_option("--preset", preset, "figure preset id (fig2a..fig2d, fig3a, fig3b, fig4a..fig4d)");
    sweep->add_option("--axis1", axis1, "custom axis, name:lo:hi:count (couplings in Hz)");
    sweep->add_option("--axis2", axis2, "optional second axis");
    sweep->add_option("--pairs", pairs, "comma list: optical,phonon,magnon,microwave");
    sweep->add_option("--grid", grid, "preset grid resolution per axis");
    sweep->add_option("--out", out_path, "output CSV path (stdout if omitted)");
    sweep->add_option("--jobs", jobs, "worker threads");

    CLI::App* optimize = app.add_subcommand("optimize", "maximize E_N over G_mb/G_bc");
    std::string free_list = "G_mb,G_bc", lo_list, hi_list, opt_pair = "microwave";
    optimize->add_option("--free", free_list, "free parameters (subset of G_mb,G_bc)");
    optimize->add_option("--lo", lo_list, "lower bounds in Hz, comma separated");
    optimize->add_option("--hi", hi_list, "upper bounds in Hz, comma separated");
    optimize->add_option("--pair", opt_pair, "mode pair to maximize");
    optimize->add_option("--out", out_path, "write a JSON manifest to this path");

    CLI::App* threshold = app.add_subcommand("threshold", "survival temperature of a pair");
    std::string thr_pair = "microwave";
    double t_max = 1.0;
    threshold->add_option("--pair", thr_pair, "mode pair");
    threshold->add_option("--tmax", t_max, "search ceiling in K");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig config = load_config(config_path);
        if (jobs > 0) config.jobs = jobs;
        if (grid > 0) config.grid = grid;
        if (!out_path.empty()) config.out = out_path;

        if (point->parsed()) {
            return run_point(config, out_path);
        }
        if (sweep->parsed()) {
            // explicit flags win; config-file run keys fill in only when the
            // command line names no axes at all
            if (preset.empty() && axis1.empty()) {
                if (config.preset) {
                    preset = *config.preset;
                } else if (config.axis1) {
                    axis1 = *config.axis1;
                    if (config.axis2) axis2 = *config.axis2;
                }
            }
            if (pairs.empty() && config.pairs) pairs = *config.pairs;
            if (out_path.empty() && config.out) out_path = *config.out;
            config.preset = preset.empty() ? std::nullopt : std::optional(preset);
            return run_sweep(config, spec_from_config(config, preset, axis1, axis2, pairs, grid),
                             out_path);
        }
        if (optimize->parsed()) {
            const BipartitePair target = parse_pairs(opt_pair).front();
            std::vector<SweepParameter> free;
            {
                std::istringstream fs(free_list);
                std::string tok;
                while (std::getline(fs, tok, ',')) {
                    const auto p = parse_sweep_parameter(tok);
                    if (!p) throw ConfigError("unknown parameter '" + tok + "'");
                    free.push_back(*p);
                }
            }
            auto parse_list = [](const std::string& s) {
                std::vector<double> vals;
                std::istringstream ls(s);
                std::string tok;
                while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
                return vals;
            };
            // default search box: the fig2 ranges, [0, 3.5 kappa] per coupling
            std::vector<double> lo = parse_list(lo_list);
            std::vector<double> hi = parse_list(hi_list);
            if (lo.empty()) lo.assign(free.size(), 0.0);
            if (hi.empty())
                for (SweepParameter p : free)
                    hi.push_back(3.5 * (p == SweepParameter::G_bc ? config.sub1.kappa_c_hz
                                                                  : config.sub1.kappa_a_hz));
            if (lo.size() != free.size() || hi.size() != free.size())
                throw ConfigError("bounds must match the number of free parameters");
            std::vector<std::pair<double, double>> bounds;
            for (size_t i = 0; i < free.size(); ++i) bounds.emplace_back(lo[i], hi[i]);

            const OptimizeResult r = optimize_max_entanglement(
                config.system(), config.environment(), free, bounds, target);
            for (size_t i = 0; i < free.size(); ++i)
                std::printf("%s  %.9g Hz  (%.9g rad/s)\n",
                            std::string(sweep_parameter_name(free[i])).c_str(),
                            r.coords[i], two_pi * r.coords[i]);
            std::printf("E_%s  %.9g\n", std::string(target.name()).c_str(), r.value);
            if (!out_path.empty()) {
                nlohmann::json m = run_manifest("optimize", config);
                for (size_t i = 0; i < free.size(); ++i)
                    m["optimum"][std::string(sweep_parameter_name(free[i]))] = r.coords[i];
                m["optimum"]["value"] = r.value;
                std::ofstream out(out_path);
                out << m.dump(2) << "\n";
            }
            return 0;
        }
        if (threshold->parsed()) {
            const BipartitePair target = parse_pairs(thr_pair).front();
            const ThresholdResult r =
                temperature_threshold(config.system(), config.environment(), target, t_max);
            switch (r.status) {
                case ThresholdResult::Status::Found:
                    std::printf("threshold  %.9g K  (%.6g mK)\n", r.temperature,
                                1.0e3 * r.temperature);
                    return 0;
                case ThresholdResult::Status::NotFound:
                    std::printf("entanglement still present at tmax = %.9g K\n", t_max);
                    return 0;
                case ThresholdResult::Status::NotApplicable:
                    std::printf("no entanglement at the base temperature\n");
                    return 0;
            }
        }
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
