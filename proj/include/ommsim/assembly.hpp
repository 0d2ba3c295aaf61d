#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ommsim/params.hpp"

namespace ommsim {

using Matrix = Eigen::MatrixXd;
using DriftMatrix = Eigen::MatrixXd;      // 16x16, rad/s
using DiffusionMatrix = Eigen::MatrixXd;  // 16x16 symmetric PSD, rad/s
using CovarianceMatrix = Eigen::MatrixXd; // 16x16 symmetric, vacuum variance 1/2

inline constexpr int n_modes = 8;
inline constexpr int n_quadratures = 16;

/// Mode species in fixed block order: microwave, magnon, phonon, optical.
enum class Mode { Microwave = 0, Magnon = 1, Phonon = 2, Optical = 3 };

/// Index of the X quadrature of a given mode; Y is the next index.
/// Layout: 4 entries per species, subsystem 1 then subsystem 2.
constexpr int quadrature_index(Mode mode, int subsystem) {
    return 4 * static_cast<int>(mode) + 2 * (subsystem - 1);
}

inline constexpr std::array<std::string_view, n_quadratures> quadrature_labels = {
    "X_a1", "Y_a1", "X_a2", "Y_a2", "X_m1", "Y_m1", "X_m2", "Y_m2",
    "q_1",  "p_1",  "q_2",  "p_2",  "X_c1", "Y_c1", "X_c2", "Y_c2"};

/// Per-quadrature decay rates in index order (each rate twice).
inline std::array<double, n_quadratures> decay_rates(const SystemParams& params) {
    std::array<double, n_quadratures> r{};
    const SubsystemParams* subs[2] = {&params.sub1, &params.sub2};
    for (int j = 0; j < 2; ++j) {
        const SubsystemParams& s = *subs[j];
        r[quadrature_index(Mode::Microwave, j + 1) + 0] = s.kappa_a;
        r[quadrature_index(Mode::Microwave, j + 1) + 1] = s.kappa_a;
        r[quadrature_index(Mode::Magnon, j + 1) + 0] = s.kappa_m;
        r[quadrature_index(Mode::Magnon, j + 1) + 1] = s.kappa_m;
        r[quadrature_index(Mode::Phonon, j + 1) + 0] = s.gamma_b;
        r[quadrature_index(Mode::Phonon, j + 1) + 1] = s.gamma_b;
        r[quadrature_index(Mode::Optical, j + 1) + 0] = s.kappa_c;
        r[quadrature_index(Mode::Optical, j + 1) + 1] = s.kappa_c;
    }
    return r;
}

/// Drift matrix of the resonant rotating-frame dynamics.
///
/// Convention X = (o + o^dag)/sqrt2, Y = (o - o^dag)/(i sqrt2). Each
/// damping gives -kappa on both quadrature diagonals; the exchange
/// couplings G_mb (m<->b) and G_bc (b<->c) give -G/+G identity blocks;
/// the magnon-microwave coupling gives the rotation-generator block
/// [[0, g],[-g, 0]] on both off-diagonal positions. Hence
/// A + A^T = -2 diag(rates) holds exactly.
inline DriftMatrix build_drift(const SystemParams& params) {
    DriftMatrix A = DriftMatrix::Zero(n_quadratures, n_quadratures);
    const SubsystemParams* subs[2] = {&params.sub1, &params.sub2};
    for (int j = 0; j < 2; ++j) {
        const SubsystemParams& s = *subs[j];
        const int a = quadrature_index(Mode::Microwave, j + 1);
        const int m = quadrature_index(Mode::Magnon, j + 1);
        const int b = quadrature_index(Mode::Phonon, j + 1);
        const int c = quadrature_index(Mode::Optical, j + 1);

        A(a, a) = A(a + 1, a + 1) = -s.kappa_a;
        A(m, m) = A(m + 1, m + 1) = -s.kappa_m;
        A(b, b) = A(b + 1, b + 1) = -s.gamma_b;
        A(c, c) = A(c + 1, c + 1) = -s.kappa_c;

        A(a, m + 1) = s.g_a;
        A(a + 1, m) = -s.g_a;
        A(m, a + 1) = s.g_a;
        A(m + 1, a) = -s.g_a;

        A(m, b) = -s.G_mb;
        A(m + 1, b + 1) = -s.G_mb;
        A(b, m) = s.G_mb;
        A(b + 1, m + 1) = s.G_mb;

        A(b, c) = -s.G_bc;
        A(b + 1, c + 1) = -s.G_bc;
        A(c, b) = s.G_bc;
        A(c + 1, b + 1) = s.G_bc;
    }
    return A;
}

/// Diffusion matrix. Thermal blocks are rate*(2N+1) at each mode's own
/// frequency; the optical block carries the squeezed-field cross
/// correlations +2 sqrt(kc1 kc2) M on X_c1-X_c2 and the opposite sign on
/// Y_c1-Y_c2 (the rotating frame cancels the input-field phase factors,
/// so D is time independent).
inline DiffusionMatrix build_diffusion(const SystemParams& params,
                                       const EnvironmentParams& env,
                                       const PhysicalConstants& pc = {}) {
    DiffusionMatrix D = DiffusionMatrix::Zero(n_quadratures, n_quadratures);
    const SqueezeMoments sq = squeeze_moments(env.squeeze_r);
    const SubsystemParams* subs[2] = {&params.sub1, &params.sub2};
    for (int j = 0; j < 2; ++j) {
        const SubsystemParams& s = *subs[j];
        const int a = quadrature_index(Mode::Microwave, j + 1);
        const int m = quadrature_index(Mode::Magnon, j + 1);
        const int b = quadrature_index(Mode::Phonon, j + 1);
        const int c = quadrature_index(Mode::Optical, j + 1);
        const double na = bose_occupation(s.omega_a, env.temperature, pc);
        const double nm = bose_occupation(s.omega_m, env.temperature, pc);
        const double nb = bose_occupation(s.omega_b, env.temperature, pc);
        D(a, a) = D(a + 1, a + 1) = s.kappa_a * (2.0 * na + 1.0);
        D(m, m) = D(m + 1, m + 1) = s.kappa_m * (2.0 * nm + 1.0);
        D(b, b) = D(b + 1, b + 1) = s.gamma_b * (2.0 * nb + 1.0);
        D(c, c) = D(c + 1, c + 1) = s.kappa_c * (2.0 * sq.n_sq + 1.0);
    }
    const int c1 = quadrature_index(Mode::Optical, 1);
    const int c2 = quadrature_index(Mode::Optical, 2);
    const double cross =
        2.0 * std::sqrt(params.sub1.kappa_c * params.sub2.kappa_c) * sq.m_sq;
    D(c1, c2) = D(c2, c1) = cross;
    D(c1 + 1, c2 + 1) = D(c2 + 1, c1 + 1) = -cross;
    return D;
}

struct Diagnostics {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

/// Sanity checks on a parameter set. Violations make the model
/// ill-posed; warnings flag regimes the scheme is not designed for
/// (e.g. loss of magnon-microwave strong coupling).
inline Diagnostics validate_params(const SystemParams& params,
                                   const EnvironmentParams& env) {
    Diagnostics d;
    auto check_sub = [&d](const SubsystemParams& s, const std::string& tag) {
        struct Field { const char* name; double value; bool strictly_positive; };
        const Field fields[] = {
            {"omega_a", s.omega_a, false}, {"omega_m", s.omega_m, false},
            {"omega_b", s.omega_b, false}, {"omega_c", s.omega_c, false},
            {"kappa_a", s.kappa_a, true},  {"kappa_m", s.kappa_m, true},
            {"kappa_c", s.kappa_c, true},  {"gamma_b", s.gamma_b, true},
            {"g_a", s.g_a, false},         {"G_mb", s.G_mb, false},
            {"G_bc", s.G_bc, false},
        };
        for (const Field& f : fields) {
            if (std::isnan(f.value))
                d.violations.push_back(tag + "." + f.name + " is NaN");
            else if (f.value < 0.0)
                d.violations.push_back(tag + "." + f.name + " is negative");
            else if (f.strictly_positive && f.value == 0.0)
                d.violations.push_back(tag + "." + f.name + " must be > 0");
        }
        if (s.g_a > 0.0 && s.g_a <= std::max(s.kappa_a, s.kappa_m))
            d.warnings.push_back(tag + ": g_a <= max(kappa_a, kappa_m); outside the strong-coupling regime");
    };
    check_sub(params.sub1, "sub1");
    check_sub(params.sub2, "sub2");
    if (std::isnan(env.temperature) || env.temperature < 0.0)
        d.violations.push_back("temperature must be >= 0");
    if (std::isnan(env.squeeze_r) || env.squeeze_r < 0.0)
        d.violations.push_back("squeeze_r must be >= 0");
    return d;
}

}  // namespace ommsim
