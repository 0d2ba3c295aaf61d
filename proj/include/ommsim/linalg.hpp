#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ommsim/errors.hpp"

namespace ommsim {

/// max_i Re(lambda_i(A)) via a dense QR eigensolve.
inline double spectral_abscissa(const Eigen::MatrixXd& A) {
    if (!A.allFinite()) throw NumericError("spectral_abscissa: non-finite input");
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericError("spectral_abscissa: eigensolver did not converge");
    return es.eigenvalues().real().maxCoeff();
}

/// Routh-Hurwitz gate: all eigenvalue real parts below a tolerance that
/// scales with the magnitude of A (rates span several decades).
inline bool is_stable(const Eigen::MatrixXd& A) {
    const double eps = 1.0e-9 * A.cwiseAbs().rowwise().sum().maxCoeff();
    return spectral_abscissa(A) < -eps;
}

namespace detail {

/// Back-substitution for T y + y T^T = -C with T upper triangular:
/// column k solves (T + T_kk I) y_k = -C_k - sum_{j>k} T_kj y_j.
inline Eigen::MatrixXcd solve_triangular_lyapunov(const Eigen::MatrixXcd& T,
                                                  const Eigen::MatrixXcd& C) {
    const Eigen::Index n = T.rows();
    Eigen::MatrixXcd Y(n, n);
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        rhs = -C.col(k);
        for (Eigen::Index j = k + 1; j < n; ++j) rhs -= T(k, j) * Y.col(j);
        const std::complex<double> shift = T(k, k);
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            std::complex<double> s = rhs(i);
            for (Eigen::Index j = i + 1; j < n; ++j) s -= T(i, j) * Y(j, k);
            const std::complex<double> piv = T(i, i) + shift;
            if (std::abs(piv) == 0.0)
                throw NumericError("solve_lyapunov: singular triangular factor");
            Y(i, k) = s / piv;
        }
    }
    return Y;
}

}  // namespace detail

/// Unique symmetric solution of A V + V A^T = -D for stable A
/// (Bartels-Stewart on the complex Schur form). The result is
/// explicitly symmetrized before return.
inline Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& D) {
    if (!A.allFinite() || !D.allFinite())
        throw NumericError("solve_lyapunov: non-finite input");
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(A.cast<std::complex<double>>(), true);
    if (schur.info() != Eigen::Success)
        throw NumericError("solve_lyapunov: Schur decomposition failed");
    const Eigen::MatrixXcd& T = schur.matrixT();
    const Eigen::MatrixXcd& U = schur.matrixU();

    const double eps = 1.0e-9 * A.cwiseAbs().rowwise().sum().maxCoeff();
    for (Eigen::Index i = 0; i < T.rows(); ++i)
        if (!(T(i, i).real() < -eps))
            throw StabilityError("solve_lyapunov: drift matrix is not stable");

    // V = U Y U^T with T Y + Y T^T = -U^H D conj(U)
    const Eigen::MatrixXcd C = U.adjoint() * D * U.conjugate();
    const Eigen::MatrixXcd Y = detail::solve_triangular_lyapunov(T, C);
    Eigen::MatrixXd V = (U * Y * U.transpose()).real();
    return 0.5 * (V + V.transpose().eval());
}

/// Fixed-step classical RK4 integration of Vdot = A V + V A^T + D,
/// symmetrizing after every step. Serves as an independent cross-check
/// of solve_lyapunov.
inline Eigen::MatrixXd evolve_covariance(const Eigen::MatrixXd& A,
                                         const Eigen::MatrixXd& D,
                                         const Eigen::MatrixXd& V0,
                                         double duration, double step) {
    if (!(step > 0.0)) throw std::domain_error("evolve_covariance: step must be > 0");
    if (duration < 0.0) throw std::domain_error("evolve_covariance: negative duration");
    Eigen::MatrixXd V = 0.5 * (V0 + V0.transpose().eval());
    auto rate = [&](const Eigen::MatrixXd& M) -> Eigen::MatrixXd {
        Eigen::MatrixXd AM = A * M;
        return AM + AM.transpose().eval() + D;
    };
    double t = 0.0;
    while (t < duration) {
        const double h = std::min(step, duration - t);
        const Eigen::MatrixXd k1 = rate(V);
        const Eigen::MatrixXd k2 = rate(V + 0.5 * h * k1);
        const Eigen::MatrixXd k3 = rate(V + 0.5 * h * k2);
        const Eigen::MatrixXd k4 = rate(V + h * k3);
        V += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        V = 0.5 * (V + V.transpose().eval());
        if (!V.allFinite())
            throw NumericError("evolve_covariance: integration diverged");
        t += h;
    }
    return V;
}

/// Symplectic spectrum of a 2n x 2n covariance matrix: the n moduli of
/// the eigenvalues of i Omega V (each appears twice in the raw spectrum
/// and is reported once), with Omega the direct sum of [[0,1],[-1,0]].
/// Physical states satisfy nu >= 1/2. Returned ascending.
inline std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& V) {
    const Eigen::Index dim = V.rows();
    if (dim % 2 != 0 || V.cols() != dim)
        throw std::domain_error("symplectic_eigenvalues: need a 2n x 2n matrix");
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; k += 2) {
        omega(k, k + 1) = 1.0;
        omega(k + 1, k) = -1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(omega * V, false);
    if (es.info() != Eigen::Success)
        throw NumericError("symplectic_eigenvalues: eigensolver did not converge");
    std::vector<double> moduli(static_cast<size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i)
        moduli[static_cast<size_t>(i)] = std::abs(es.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end());
    std::vector<double> nu(static_cast<size_t>(dim / 2));
    for (size_t i = 0; i < nu.size(); ++i)
        nu[i] = 0.5 * (moduli[2 * i] + moduli[2 * i + 1]);  // paired +/- copies
    return nu;
}

inline double det2(const Eigen::Matrix2d& M) {
    return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
}

inline double det4(const Eigen::Matrix4d& M) {
    // cofactor expansion along the first row
    auto minor3 = [&M](int r0, int r1, int r2, int c0, int c1, int c2) {
        return M(r0, c0) * (M(r1, c1) * M(r2, c2) - M(r1, c2) * M(r2, c1)) -
               M(r0, c1) * (M(r1, c0) * M(r2, c2) - M(r1, c2) * M(r2, c0)) +
               M(r0, c2) * (M(r1, c0) * M(r2, c1) - M(r1, c1) * M(r2, c0));
    };
    return M(0, 0) * minor3(1, 2, 3, 1, 2, 3) - M(0, 1) * minor3(1, 2, 3, 0, 2, 3) +
           M(0, 2) * minor3(1, 2, 3, 0, 1, 3) - M(0, 3) * minor3(1, 2, 3, 0, 1, 2);
}

}  // namespace ommsim
