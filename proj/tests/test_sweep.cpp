#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ommsim/report.hpp"
#include "ommsim/sweep.hpp"

using namespace ommsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::string csv_of(const SweepResult& result) {
    std::ostringstream out;
    write_csv(result, out);
    return out.str();
}

}  // namespace

TEST_CASE("figure presets") {
    SECTION("fig2d sweeps both couplings for the microwave pair") {
        const SweepSpec spec = figure_preset("fig2d");
        CHECK(spec.axis1.param == SweepParameter::G_mb);
        CHECK(spec.axis2->param == SweepParameter::G_bc);
        CHECK(spec.axis1.lo == 0.0);
        CHECK_THAT(spec.axis1.hi, WithinRel(3.5 * 1.5e6, 1.0e-12));
        CHECK_THAT(spec.axis2->hi, WithinRel(3.5 * 3.0e6, 1.0e-12));
        CHECK(spec.axis1.count == 101);
        REQUIRE(spec.pairs.size() == 1);
        CHECK(spec.pairs[0].mode == Mode::Microwave);
    }
    SECTION("fig3b is a 1D sweep over r with all four pairs") {
        const SweepSpec spec = figure_preset("fig3b");
        CHECK(spec.axis1.param == SweepParameter::r);
        CHECK_FALSE(spec.axis2.has_value());
        CHECK(spec.axis1.hi == 2.0);
        CHECK(spec.pairs.size() == 4);
        CHECK_THAT(spec.env.temperature, WithinRel(10.0e-3, 1.0e-12));
    }
    SECTION("fig4d sweeps r against g_a") {
        const SweepSpec spec = figure_preset("fig4d");
        CHECK(spec.axis1.param == SweepParameter::r);
        CHECK(spec.axis2->param == SweepParameter::g_a);
    }
    SECTION("fig4a/b/c sweep one coupling per subsystem") {
        CHECK(figure_preset("fig4a").axis1.param == SweepParameter::g_a1);
        CHECK(figure_preset("fig4a").axis2->param == SweepParameter::g_a2);
        CHECK(figure_preset("fig4b").axis1.param == SweepParameter::G_mb1);
        CHECK(figure_preset("fig4c").axis2->param == SweepParameter::G_bc2);
    }
    SECTION("grid resolution is overridable") {
        CHECK(figure_preset("fig2a", default_system(), default_environment(), 11)
                  .axis1.count == 11);
    }
    CHECK_THROWS_AS(figure_preset("fig9z"), ConfigError);
}

TEST_CASE("grid sweep") {
    SECTION("2x2 grid without squeezing gives four zero records") {
        SweepSpec spec = figure_preset("fig2d", default_system(), {10.0e-3, 0.0}, 2);
        spec.pairs = {optical_pair, phonon_pair, magnon_pair, microwave_pair};
        const SweepResult result = grid_sweep(spec);
        REQUIRE(result.points.size() == 4);
        for (const SweepPoint& pt : result.points) {
            CHECK(pt.stable);
            for (Mode mode : {Mode::Optical, Mode::Phonon, Mode::Magnon, Mode::Microwave}) {
                REQUIRE(pt.entanglement[static_cast<size_t>(mode)].has_value());
                CHECK(*pt.entanglement[static_cast<size_t>(mode)] < 1.0e-12);
            }
        }
    }
    SECTION("row-major ordering, axis1 outer") {
        const SweepSpec spec = figure_preset("fig2d", default_system(),
                                             default_environment(), 3);
        const SweepResult result = grid_sweep(spec);
        REQUIRE(result.points.size() == 9);
        CHECK(result.points[0].coord1 == spec.axis1.coordinate(0));
        CHECK(result.points[1].coord1 == spec.axis1.coordinate(0));
        CHECK(result.points[1].coord2 == spec.axis2->coordinate(1));
        CHECK(result.points[3].coord1 == spec.axis1.coordinate(1));
    }
    SECTION("concurrent evaluation is byte-identical to serial") {
        const SweepSpec spec = figure_preset("fig2d", default_system(),
                                             default_environment(), 7);
        const std::string serial = csv_of(grid_sweep(spec, 1));
        const std::string threaded = csv_of(grid_sweep(spec, 3));
        CHECK(serial == threaded);
    }
    SECTION("repeated runs are byte-identical") {
        const SweepSpec spec = figure_preset("fig3b", default_system(),
                                             default_environment(), 9);
        CHECK(csv_of(grid_sweep(spec)) == csv_of(grid_sweep(spec)));
    }
    SECTION("asymmetric-coupling sweeps are mirror symmetric") {
        const SweepSpec spec = figure_preset("fig4a", default_system(),
                                             default_environment(), 7);
        const SweepResult result = grid_sweep(spec);
        const int n = spec.axis1.count;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                const auto& a = result.points[static_cast<size_t>(i * n + j)]
                                    .entanglement[0];
                const auto& b = result.points[static_cast<size_t>(j * n + i)]
                                    .entanglement[0];
                REQUIRE(a.has_value());
                REQUIRE(b.has_value());
                CHECK_THAT(*a, WithinAbs(*b, 1.0e-9));
            }
    }
    SECTION("global rate rescale leaves E_N unchanged") {
        SystemParams scaled = default_system();
        for (SubsystemParams* s : {&scaled.sub1, &scaled.sub2}) {
            s->kappa_a *= 10.0; s->kappa_m *= 10.0; s->kappa_c *= 10.0;
            s->gamma_b *= 10.0; s->g_a *= 10.0; s->G_mb *= 10.0; s->G_bc *= 10.0;
        }
        const auto base = steady_state_entanglement(default_system(),
                                                    default_environment(), microwave_pair);
        const auto big = steady_state_entanglement(scaled, default_environment(),
                                                   microwave_pair);
        REQUIRE(base.has_value());
        REQUIRE(big.has_value());
        CHECK_THAT(*big, WithinAbs(*base, 1.0e-9));
    }
    SECTION("invalid specs rejected") {
        SweepSpec spec = figure_preset("fig2d");
        spec.axis1.count = 1;
        CHECK_THROWS_AS(grid_sweep(spec), ConfigError);
        spec = figure_preset("fig2d");
        spec.pairs.clear();
        CHECK_THROWS_AS(grid_sweep(spec), ConfigError);
        spec = figure_preset("fig2d");
        spec.axis2->param = SweepParameter::G_mb;  // duplicate axis
        CHECK_THROWS_AS(grid_sweep(spec), ConfigError);
    }
}

TEST_CASE("coupling optimization") {
    const SystemParams base = default_system();
    const EnvironmentParams env = default_environment();
    const double ka_hz = base.sub1.kappa_a / two_pi;
    const double kc_hz = base.sub1.kappa_c / two_pi;

    SECTION("degenerate bounds return that point") {
        const OptimizeResult r = optimize_max_entanglement(
            base, env, {SweepParameter::G_bc}, {{1.6 * kc_hz, 1.6 * kc_hz}});
        CHECK(r.coords[0] == 1.6 * kc_hz);
        const auto direct = steady_state_entanglement(base, env, microwave_pair);
        CHECK_THAT(r.value, WithinAbs(*direct, 1.0e-12));
    }
    SECTION("1D scan over G_bc has an interior maximum") {
        SystemParams fixed = base;
        fixed.sub1.G_mb = fixed.sub2.G_mb = two_pi * 4.5e6;
        const OptimizeResult r = optimize_max_entanglement(
            fixed, env, {SweepParameter::G_bc}, {{0.1 * kc_hz, 3.5 * kc_hz}});
        CHECK(r.coords[0] > 0.15 * kc_hz);
        CHECK(r.coords[0] < 3.4 * kc_hz);
        auto at = [&](double hz) {
            SystemParams p = fixed;
            EnvironmentParams e = env;
            apply_sweep_parameter(p, e, SweepParameter::G_bc, hz);
            return *steady_state_entanglement(p, e, microwave_pair);
        };
        CHECK(r.value > at(0.1 * kc_hz));
        CHECK(r.value > at(3.5 * kc_hz));
    }
    SECTION("optimizer dominates a grid scan over the same bounds") {
        const std::vector<std::pair<double, double>> bounds = {
            {0.0, 3.5 * ka_hz}, {0.0, 3.5 * kc_hz}};
        const OptimizeResult r = optimize_max_entanglement(
            base, env, {SweepParameter::G_mb, SweepParameter::G_bc}, bounds);
        double grid_best = 0.0;
        for (int i = 0; i <= 10; ++i)
            for (int j = 0; j <= 10; ++j) {
                SystemParams p = base;
                EnvironmentParams e = env;
                apply_sweep_parameter(p, e, SweepParameter::G_mb,
                                      bounds[0].second * i / 10.0);
                apply_sweep_parameter(p, e, SweepParameter::G_bc,
                                      bounds[1].second * j / 10.0);
                const auto en = steady_state_entanglement(p, e, microwave_pair);
                if (en) grid_best = std::max(grid_best, *en);
            }
        CHECK(r.value >= grid_best - 1.0e-12);
    }
    SECTION("bad arguments rejected") {
        CHECK_THROWS_AS(optimize_max_entanglement(base, env, {}, {}), ConfigError);
        CHECK_THROWS_AS(optimize_max_entanglement(base, env, {SweepParameter::r},
                                                  {{0.0, 1.0}}),
                        ConfigError);
        CHECK_THROWS_AS(optimize_max_entanglement(base, env, {SweepParameter::G_mb},
                                                  {{1.0, 0.0}}),
                        ConfigError);
    }
}

TEST_CASE("temperature threshold") {
    const SystemParams base = default_system();

    SECTION("no squeezing: not applicable") {
        const ThresholdResult r =
            temperature_threshold(base, {10.0e-3, 0.0}, microwave_pair, 1.0);
        CHECK(r.status == ThresholdResult::Status::NotApplicable);
    }
    SECTION("reference point survives to roughly 0.38 K") {
        const ThresholdResult r =
            temperature_threshold(base, default_environment(), microwave_pair, 1.0);
        REQUIRE(r.status == ThresholdResult::Status::Found);
        CHECK_THAT(r.temperature, WithinAbs(0.3777, 5.0e-3));
    }
    SECTION("stronger squeezing raises the threshold") {
        const ThresholdResult r1 =
            temperature_threshold(base, {10.0e-3, 1.0}, microwave_pair, 3.0);
        const ThresholdResult r2 =
            temperature_threshold(base, {10.0e-3, 2.0}, microwave_pair, 3.0);
        REQUIRE(r1.status == ThresholdResult::Status::Found);
        REQUIRE(r2.status == ThresholdResult::Status::Found);
        CHECK(r2.temperature > r1.temperature);
    }
    SECTION("ceiling below the threshold reports not found") {
        const ThresholdResult r =
            temperature_threshold(base, default_environment(), microwave_pair, 0.1);
        CHECK(r.status == ThresholdResult::Status::NotFound);
    }
}

TEST_CASE("transfer efficiency") {
    CHECK_THAT(transfer_efficiency(0.54, 1.0), WithinRel(0.27, 1.0e-12));
    CHECK(transfer_efficiency(0.0, 1.7) == 0.0);
    CHECK(transfer_efficiency(2.0 * 0.8, 0.8) == 1.0);
    CHECK_THROWS_AS(transfer_efficiency(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(transfer_efficiency(0.5, -1.0), std::domain_error);
}
