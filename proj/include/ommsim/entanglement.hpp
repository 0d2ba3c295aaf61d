#pragma once

#include <cmath>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "ommsim/assembly.hpp"
#include "ommsim/linalg.hpp"

namespace ommsim {

/// Same-species mode pair across the two subsystems.
struct BipartitePair {
    Mode mode = Mode::Microwave;

    int x1() const { return quadrature_index(mode, 1); }
    int x2() const { return quadrature_index(mode, 2); }
    std::string_view name() const {
        switch (mode) {
            case Mode::Microwave: return "a1a2";
            case Mode::Magnon: return "m1m2";
            case Mode::Phonon: return "b1b2";
            case Mode::Optical: return "c1c2";
        }
        return "?";
    }
};

inline constexpr BipartitePair microwave_pair{Mode::Microwave};
inline constexpr BipartitePair magnon_pair{Mode::Magnon};
inline constexpr BipartitePair phonon_pair{Mode::Phonon};
inline constexpr BipartitePair optical_pair{Mode::Optical};

/// Two-mode reduction of the full covariance matrix.
struct PairCM {
    Eigen::Matrix2d v1;
    Eigen::Matrix2d v2;
    Eigen::Matrix2d c12;

    Eigen::Matrix4d v4() const {
        Eigen::Matrix4d m;
        m << v1, c12, c12.transpose(), v2;
        return m;
    }
};

inline PairCM extract_pair(const CovarianceMatrix& V, const BipartitePair& pair) {
    PairCM p;
    p.v1 = V.block<2, 2>(pair.x1(), pair.x1());
    p.v2 = V.block<2, 2>(pair.x2(), pair.x2());
    p.c12 = V.block<2, 2>(pair.x1(), pair.x2());
    return p;
}

namespace detail {

/// Smallest symplectic eigenvalue of the partially transposed two-mode CM,
/// from the symplectic invariants Sigma~ = det v1 + det v2 - 2 det c12 and
/// det V4 (the sign flip on det c12 is the partial transpose of mode 2).
inline double eta_minus(const PairCM& pcm) {
    const double d1 = det2(pcm.v1);
    const double d2 = det2(pcm.v2);
    const double dc = det2(pcm.c12);
    const double d4 = det4(pcm.v4());
    const double sigma = d1 + d2 - 2.0 * dc;
    double disc = sigma * sigma - 4.0 * d4;
    if (disc < 0.0) {
        // numerical noise near pure states; anything worse is a real defect
        if (disc < -1.0e-12) throw std::domain_error("eta_minus: negative discriminant");
        disc = 0.0;
    }
    const double inner = 0.5 * (sigma - std::sqrt(disc));
    if (inner <= 0.0) throw std::domain_error("eta_minus: non-positive invariant");
    return std::sqrt(inner);
}

}  // namespace detail

/// Logarithmic negativity E_N = max(0, -ln 2 eta^-), natural log.
inline double log_negativity(const PairCM& pcm) {
    return std::max(0.0, -std::log(2.0 * detail::eta_minus(pcm)));
}

/// Two Gaussian modes are entangled iff eta^- < 1/2.
inline bool is_entangled(const PairCM& pcm) { return detail::eta_minus(pcm) < 0.5; }

/// Stationary state of the full network, or an explicit unstable outcome.
struct SteadyState {
    bool stable = false;
    double abscissa = 0.0;
    CovarianceMatrix cm;  // empty when unstable
};

inline SteadyState solve_steady_state(const SystemParams& params,
                                      const EnvironmentParams& env,
                                      const PhysicalConstants& pc = {}) {
    SteadyState out;
    const DriftMatrix A = build_drift(params);
    out.abscissa = spectral_abscissa(A);
    const double eps = 1.0e-9 * A.cwiseAbs().rowwise().sum().maxCoeff();
    out.stable = out.abscissa < -eps;
    if (!out.stable) return out;
    out.cm = solve_lyapunov(A, build_diffusion(params, env, pc));
    return out;
}

/// Full pipeline drift -> stability gate -> diffusion -> Lyapunov ->
/// reduction -> E_N. Unstable parameter points yield nullopt, never 0.
inline std::optional<double> steady_state_entanglement(const SystemParams& params,
                                                       const EnvironmentParams& env,
                                                       const BipartitePair& pair,
                                                       const PhysicalConstants& pc = {}) {
    const SteadyState ss = solve_steady_state(params, env, pc);
    if (!ss.stable) return std::nullopt;
    return log_negativity(extract_pair(ss.cm, pair));
}

}  // namespace ommsim
