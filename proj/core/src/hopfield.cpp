#include "polsp/hopfield.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "polsp/errors.hpp"

namespace polsp::hopfield {

namespace {

constexpr double kPairingTol = 1e-10;
constexpr double kNormTol = 1e-8;

}  // namespace

Eigen::VectorXd DynamicalMatrix::metric() const {
    const int n = half_dim();
    Eigen::VectorXd eta(2 * n);
    eta.head(n).setOnes();
    eta.tail(n).setConstant(-1.0);
    return eta;
}

double PolaritonMode::symplectic_norm() const {
    return W.squaredNorm() - Y.squaredNorm() + X.squaredNorm() - Z.squaredNorm();
}

DynamicalMatrix build_dynamical_matrix(const ValidatedConfig& config,
                                       const modes::OverlapSet& overlaps,
                                       TransverseWavenumber q) {
    const int N = config->photon_modes;
    const int Xi = config->exciton_modes;
    const int S = config.species_count();
    if (overlaps.K.rows() != N || overlaps.K.cols() != Xi || overlaps.D.rows() != N ||
        overlaps.D.cols() != N)
        throw DimensionError("overlap matrices are " + std::to_string(overlaps.K.rows()) + "x" +
                             std::to_string(overlaps.K.cols()) + ", config expects " +
                             std::to_string(N) + "x" + std::to_string(Xi));

    const int n = N + S * Xi;
    const int w0 = 0, x0 = N, y0 = n, z0 = n + N;

    const Eigen::VectorXd Om = modes::photon_frequencies(config, q);
    const Eigen::VectorXd inv_sqrt = Om.cwiseSqrt().cwiseInverse();

    double g2_total = 0.0;
    for (const auto& s : config->oscillators) g2_total += s.G * s.G;

    // A_mk = sum_j G_j^2 D_mk / sqrt(Omega_m Omega_k)
    const Eigen::MatrixXd A = g2_total * inv_sqrt.asDiagonal() * overlaps.D * inv_sqrt.asDiagonal();

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.block(w0, w0, N, N) = 0.5 * A;
    M.block(w0, y0, N, N) = -0.5 * A;
    M.block(y0, w0, N, N) = 0.5 * A;
    M.block(y0, y0, N, N) = -0.5 * A;
    for (int m = 0; m < N; ++m) {
        M(w0 + m, w0 + m) += Om(m);
        M(y0 + m, y0 + m) -= Om(m);
    }

    for (int j = 0; j < S; ++j) {
        const auto& sp = config->oscillators[j];
        // C_{m,xi} = G_j sqrt(omega_j / Omega_m) K_{m,xi}
        const Eigen::MatrixXd C = sp.G * std::sqrt(sp.omega) * inv_sqrt.asDiagonal() * overlaps.K;
        const int off = j * Xi;
        M.block(w0, x0 + off, N, Xi) = 0.5 * C;
        M.block(w0, z0 + off, N, Xi) = 0.5 * C;
        M.block(y0, x0 + off, N, Xi) = 0.5 * C;
        M.block(y0, z0 + off, N, Xi) = 0.5 * C;
        M.block(x0 + off, w0, Xi, N) = 0.5 * C.transpose();
        M.block(x0 + off, y0, Xi, N) = -0.5 * C.transpose();
        M.block(z0 + off, w0, Xi, N) = -0.5 * C.transpose();
        M.block(z0 + off, y0, Xi, N) = 0.5 * C.transpose();
        for (int xi = 0; xi < Xi; ++xi) {
            M(x0 + off + xi, x0 + off + xi) = sp.omega;
            M(z0 + off + xi, z0 + off + xi) = -sp.omega;
        }
    }

    DynamicalMatrix out;
    out.M = std::move(M);
    out.photon_modes = N;
    out.species = S;
    out.exciton_modes = Xi;
    out.q = q;
    return out;
}

namespace {

// eta M is the (symmetric) Hamiltonian form of the quadratic boson problem.
// With eta M = L L^T, the symmetric matrix L^T eta L has the same spectrum as M.
struct SymplecticDecomposition {
    Eigen::LLT<Eigen::MatrixXd> chol;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
};

SymplecticDecomposition decompose(const DynamicalMatrix& matrix) {
    const Eigen::VectorXd eta = matrix.metric();
    Eigen::MatrixXd H = eta.asDiagonal() * matrix.M;
    H = 0.5 * (H + H.transpose()).eval();

    SymplecticDecomposition d;
    d.chol.compute(H);
    if (d.chol.info() != Eigen::Success)
        throw NormalizationError("Hamiltonian form is not positive definite; no stable boson modes");
    const Eigen::MatrixXd Lmat = d.chol.matrixL();
    const Eigen::MatrixXd T = Lmat.transpose() * eta.asDiagonal() * Lmat;
    d.eig.compute(0.5 * (T + T.transpose()));
    if (d.eig.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver did not converge");
    return d;
}

}  // namespace

Eigen::VectorXd raw_spectrum(const DynamicalMatrix& matrix) {
    return decompose(matrix).eig.eigenvalues();
}

std::vector<PolaritonMode> diagonalize(const DynamicalMatrix& matrix) {
    const int n = matrix.half_dim();
    const int N = matrix.photon_modes;
    const int SX = matrix.species * matrix.exciton_modes;
    const SymplecticDecomposition d = decompose(matrix);
    const Eigen::VectorXd& lam = d.eig.eigenvalues();
    const double scale = lam.cwiseAbs().maxCoeff();

    for (int i = 0; i < n; ++i) {
        const double lo = lam(i), hi = lam(2 * n - 1 - i);
        if (std::abs(lo + hi) > kPairingTol * scale)
            throw NormalizationError("eigenvalue " + std::to_string(hi) + " has no -Omega partner");
    }

    const std::complex<double> minus_i(0.0, -1.0);
    std::vector<PolaritonMode> out;
    out.reserve(n);
    for (int i = n; i < 2 * n; ++i) {
        const double Omega = lam(i);
        if (!(Omega > kPairingTol * scale))
            throw NormalizationError("zero-frequency mode in the dynamical matrix");
        Eigen::VectorXd v = d.chol.matrixU().solve(d.eig.eigenvectors().col(i));
        v *= std::sqrt(Omega);

        PolaritonMode mode;
        mode.Omega = Omega;
        mode.q = matrix.q;
        mode.W = v.segment(0, N);
        mode.X = minus_i * v.segment(N, SX).cast<std::complex<double>>();
        mode.Y = v.segment(n, N);
        mode.Z = minus_i * v.segment(n + N, SX).cast<std::complex<double>>();
        const double norm = mode.symplectic_norm();
        if (!(norm > 0.0) || std::abs(norm - 1.0) > kNormTol)
            throw NormalizationError("mode at Omega=" + std::to_string(Omega) +
                                     " has symplectic norm " + std::to_string(norm));
        out.push_back(std::move(mode));
    }
    return out;
}

std::vector<double> spectrum(const ValidatedConfig& config, TransverseWavenumber q) {
    const auto overlaps = modes::overlap_K(config);
    const auto modes = diagonalize(build_dynamical_matrix(config, overlaps, q));
    std::vector<double> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.Omega);
    return out;
}

}  // namespace polsp::hopfield
