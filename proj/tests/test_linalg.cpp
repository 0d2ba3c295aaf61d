#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ommsim/assembly.hpp"
#include "ommsim/linalg.hpp"

using namespace ommsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// Random stable drift: negative diagonal plus skew part. The field of
/// values then lies in [-max_rate, -min_rate], so stability is guaranteed.
Eigen::MatrixXd random_stable(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> rate(0.1, 10.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = -rate(rng);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 3.0 * gauss(rng);
            A(i, j) += s;
            A(j, i) -= s;
        }
    return A;
}

Eigen::MatrixXd random_psd(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
    return M * M.transpose();
}

double brute_force_det(const Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    double det = 0.0;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
        double term = (inversions % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) term *= M(i, perm[static_cast<size_t>(i)]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

TEST_CASE("spectral abscissa") {
    SECTION("diagonal matrix") {
        Eigen::MatrixXd A = -Eigen::Vector4d(1.0, 2.0, 3.0, 4.0).asDiagonal().toDenseMatrix();
        CHECK_THAT(spectral_abscissa(A), WithinAbs(-1.0, 1.0e-12));
    }
    SECTION("rotation generator plus damping has abscissa -kappa") {
        Eigen::MatrixXd A(2, 2);
        A << -0.7, 5.0, -5.0, -0.7;
        CHECK_THAT(spectral_abscissa(A), WithinAbs(-0.7, 1.0e-12));
    }
    SECTION("companion matrices of polynomials with known roots") {
        // p(x) = prod (x - r_i), roots spread over two decades
        const std::vector<std::vector<double>> root_sets = {
            {-1.0, -2.0, -3.0},
            {-0.1, -1.0, -10.0, -5.0},
            {-1.0, -1.5, -2.5, -4.0, -8.0},
        };
        for (const auto& roots : root_sets) {
            const int n = static_cast<int>(roots.size());
            std::vector<double> coeff(static_cast<size_t>(n) + 1, 0.0);
            coeff[0] = 1.0;  // monic, descending powers
            for (double r : roots) {
                for (int k = n; k >= 1; --k)
                    coeff[static_cast<size_t>(k)] -= r * coeff[static_cast<size_t>(k - 1)];
            }
            Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
            for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
            for (int i = 0; i < n; ++i) C(0, i) = -coeff[static_cast<size_t>(i) + 1];
            Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
            std::vector<double> found;
            for (int i = 0; i < n; ++i) found.push_back(es.eigenvalues()(i).real());
            std::sort(found.begin(), found.end());
            std::vector<double> expected = roots;
            std::sort(expected.begin(), expected.end());
            for (int i = 0; i < n; ++i)
                CHECK_THAT(found[static_cast<size_t>(i)],
                           WithinAbs(expected[static_cast<size_t>(i)], 1.0e-8));
            CHECK_THAT(spectral_abscissa(C), WithinAbs(expected.back(), 1.0e-8));
        }
    }
    SECTION("non-finite input rejected") {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
        A(0, 0) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(spectral_abscissa(A), NumericError);
    }
}

TEST_CASE("stability gate") {
    SystemParams p = default_system();
    p.sub1.g_a = p.sub1.G_mb = p.sub1.G_bc = 0.0;
    p.sub2 = p.sub1;
    CHECK(is_stable(build_drift(p)));
    CHECK_FALSE(is_stable(Eigen::MatrixXd::Identity(4, 4)));
    CHECK_FALSE(is_stable(Eigen::MatrixXd::Zero(3, 3)));
}

TEST_CASE("lyapunov solver") {
    SECTION("A = -I, D = 2I gives V = I") {
        const Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(4, 4);
        const Eigen::MatrixXd V = solve_lyapunov(A, 2.0 * Eigen::MatrixXd::Identity(4, 4));
        CHECK((V - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1.0e-13);
    }
    SECTION("diagonal closed form V_ii = D_ii / (2 a_i)") {
        Eigen::VectorXd a(3), d(3);
        a << 0.5, 2.0, 7.0;
        d << 1.0, 3.0, 0.25;
        const Eigen::MatrixXd V =
            solve_lyapunov((-a).asDiagonal().toDenseMatrix(), d.asDiagonal().toDenseMatrix());
        for (int i = 0; i < 3; ++i)
            CHECK_THAT(V(i, i), WithinRel(d(i) / (2.0 * a(i)), 1.0e-13));
    }
    SECTION("residual contract on 1000 random stable instances") {
        std::mt19937_64 rng(42);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const Eigen::MatrixXd A = random_stable(rng, 16);
            const Eigen::MatrixXd D = random_psd(rng, 16);
            const Eigen::MatrixXd V = solve_lyapunov(A, D);
            const double res = (A * V + V * A.transpose() + D).cwiseAbs().maxCoeff();
            worst = std::max(worst, res / D.cwiseAbs().maxCoeff());
        }
        CHECK(worst <= 1.0e-10);
    }
    SECTION("invariant under uniform rate rescale") {
        std::mt19937_64 rng(43);
        const Eigen::MatrixXd A = random_stable(rng, 16);
        const Eigen::MatrixXd D = random_psd(rng, 16);
        const Eigen::MatrixXd V1 = solve_lyapunov(A, D);
        const Eigen::MatrixXd V2 = solve_lyapunov(1.0e4 * A, 1.0e4 * D);
        CHECK((V1 - V2).cwiseAbs().maxCoeff() <= 1.0e-10 * V1.cwiseAbs().maxCoeff());
    }
    SECTION("solution is symmetric") {
        std::mt19937_64 rng(44);
        const Eigen::MatrixXd V = solve_lyapunov(random_stable(rng, 8), random_psd(rng, 8));
        CHECK((V - V.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("unstable drift rejected") {
        CHECK_THROWS_AS(
            solve_lyapunov(Eigen::MatrixXd::Identity(4, 4), Eigen::MatrixXd::Identity(4, 4)),
            StabilityError);
    }
}

TEST_CASE("covariance ODE integrator") {
    SECTION("zero duration returns the initial condition") {
        const Eigen::MatrixXd V0 = Eigen::MatrixXd::Identity(4, 4) * 0.3;
        const Eigen::MatrixXd V =
            evolve_covariance(-Eigen::MatrixXd::Identity(4, 4),
                              Eigen::MatrixXd::Identity(4, 4), V0, 0.0, 1.0e-3);
        CHECK((V - V0).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("scalar closed form V(t) = 1 - exp(-2t)") {
        Eigen::MatrixXd A(1, 1), D(1, 1), V0(1, 1);
        A << -1.0;
        D << 2.0;
        V0 << 0.0;
        for (double t : {0.5, 1.0, 3.0}) {
            const Eigen::MatrixXd V = evolve_covariance(A, D, V0, t, 1.0e-4);
            CHECK_THAT(V(0, 0), WithinAbs(1.0 - std::exp(-2.0 * t), 1.0e-9));
        }
    }
    SECTION("long-time limit matches the Lyapunov solution") {
        std::mt19937_64 rng(45);
        const Eigen::MatrixXd A = random_stable(rng, 8);
        const Eigen::MatrixXd D = random_psd(rng, 8);
        const Eigen::MatrixXd V_exact = solve_lyapunov(A, D);
        const double min_rate = -A.diagonal().maxCoeff();
        const double step = 0.05 / A.cwiseAbs().rowwise().sum().maxCoeff();
        const Eigen::MatrixXd V_ode = evolve_covariance(
            A, D, 0.5 * Eigen::MatrixXd::Identity(8, 8), 10.0 / min_rate, step);
        CHECK((V_ode - V_exact).cwiseAbs().maxCoeff() < 1.0e-6);
    }
    SECTION("bad step or duration rejected") {
        const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2, 2);
        CHECK_THROWS_AS(evolve_covariance(M, M, M, 1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(evolve_covariance(M, M, M, -1.0, 0.1), std::domain_error);
    }
}

TEST_CASE("symplectic eigenvalues") {
    SECTION("vacuum") {
        const auto nu = symplectic_eigenvalues(0.5 * Eigen::MatrixXd::Identity(8, 8));
        REQUIRE(nu.size() == 4);
        for (double v : nu) CHECK_THAT(v, WithinAbs(0.5, 1.0e-12));
    }
    SECTION("pure single-mode squeezed states stay at 1/2") {
        Eigen::MatrixXd V = Eigen::MatrixXd::Zero(6, 6);
        const double s[3] = {0.1, 1.0, 7.5};
        for (int m = 0; m < 3; ++m) {
            V(2 * m, 2 * m) = s[m];
            V(2 * m + 1, 2 * m + 1) = 1.0 / (4.0 * s[m]);
        }
        for (double v : symplectic_eigenvalues(V)) CHECK_THAT(v, WithinRel(0.5, 1.0e-10));
    }
    SECTION("thermal spectrum recovered") {
        Eigen::MatrixXd V = Eigen::MatrixXd::Zero(4, 4);
        V.diagonal() << 2.5, 2.5, 0.9, 0.9;
        const auto nu = symplectic_eigenvalues(V);
        CHECK_THAT(nu[0], WithinRel(0.9, 1.0e-12));
        CHECK_THAT(nu[1], WithinRel(2.5, 1.0e-12));
    }
    SECTION("odd dimension rejected") {
        CHECK_THROWS_AS(symplectic_eigenvalues(Eigen::MatrixXd::Identity(3, 3)),
                        std::domain_error);
    }
}

TEST_CASE("small determinants") {
    CHECK(det2(Eigen::Matrix2d::Identity()) == 1.0);
    CHECK(det2((Eigen::Matrix2d() << 2.0, 0.0, 0.0, 3.0).finished()) == 6.0);
    CHECK(det4(Eigen::Matrix4d::Identity()) == 1.0);
    SECTION("random matrices against the permutation-expansion oracle") {
        std::mt19937_64 rng(46);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            Eigen::Matrix4d M;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) M(i, j) = gauss(rng);
            const double expected = brute_force_det(M);
            // absolute fallback guards the rare near-singular draw
            CHECK_THAT(det4(M), WithinRel(expected, 1.0e-12) || WithinAbs(expected, 1.0e-12));
            const Eigen::Matrix2d B = M.topLeftCorner<2, 2>();
            CHECK_THAT(det2(B),
                       WithinRel(brute_force_det(B), 1.0e-12) ||
                           WithinAbs(brute_force_det(B), 1.0e-12));
        }
    }
}
