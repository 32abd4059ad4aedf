#pragma once

#include <vector>

#include <Eigen/Dense>

#include "polsp/model.hpp"
#include "polsp/modes.hpp"

namespace polsp::hopfield {

/// Real first-order evolution matrix of the coupled photon/exciton
/// amplitudes, acting on the coefficient vector
///
///   v = (W_1..W_N, X~_{1,0}..X~_{S,Xi-1}, Y_1..Y_N, Z~_{1,0}..Z~_{S,Xi-1})
///
/// with X~ = iX, Z~ = iZ so that every entry is real. Exciton block index
/// for species j, basis function xi is j * Xi + xi. Omega v = M v holds for
/// every polariton mode; eta M is symmetric with eta = diag(1, 1, -1, -1).
struct DynamicalMatrix {
    Eigen::MatrixXd M;
    int photon_modes = 0;
    int species = 0;
    int exciton_modes = 0;
    TransverseWavenumber q;

    /// N + S * Xi.
    int half_dim() const noexcept { return photon_modes + species * exciton_modes; }
    /// diag(+1 on W and X, -1 on Y and Z).
    Eigen::VectorXd metric() const;
};

/// One normalized polariton operator B = sum W a + X b + Y a^dag + Z b^dag.
struct PolaritonMode {
    double Omega = 0.0;
    Eigen::VectorXd W;
    Eigen::VectorXcd X;
    Eigen::VectorXd Y;
    Eigen::VectorXcd Z;
    TransverseWavenumber q;

    /// sum |W|^2 - |Y|^2 + sum |X|^2 - |Z|^2.
    double symplectic_norm() const;
};

/// Assembles the matrix. Throws DimensionError when `overlaps` does not
/// match the truncation of `config`.
DynamicalMatrix build_dynamical_matrix(const ValidatedConfig& config,
                                       const modes::OverlapSet& overlaps,
                                       TransverseWavenumber q);

/// All 2(N + S Xi) eigenvalues of M, ascending. They come in +/- pairs.
Eigen::VectorXd raw_spectrum(const DynamicalMatrix& matrix);

/// Positive-frequency modes, ascending in Omega, each scaled to unit
/// symplectic norm. Throws NormalizationError when eta M is not positive
/// definite, a zero mode appears, or +/- pairing fails; ConvergenceError
/// when the eigensolver does not converge.
std::vector<PolaritonMode> diagonalize(const DynamicalMatrix& matrix);

/// Sorted positive polariton frequencies at q.
std::vector<double> spectrum(const ValidatedConfig& config, TransverseWavenumber q);

}  // namespace polsp::hopfield
