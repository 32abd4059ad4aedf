#pragma once

#include <Eigen/Dense>

#include "polsp/model.hpp"

namespace polsp::modes {

/// Longitudinal wavenumber of cavity mode m (1-based): pi m / L.
double photon_wavenumber(const ValidatedConfig& config, int m);

/// Omega_m(q) = c sqrt((pi m / L)^2 + q^2). Throws IndexError unless 1 <= m <= N.
double photon_frequency(const ValidatedConfig& config, int m, TransverseWavenumber q);

/// All N photon frequencies at q, ascending.
Eigen::VectorXd photon_frequencies(const ValidatedConfig& config, TransverseWavenumber q);

/// phi_m(z) = sqrt(2/L) sin(m pi (z/L + 1/2)) on |z| <= L/2, zero outside.
double photon_mode(const ValidatedConfig& config, int m, double z);

/// chi_xi(z) = sqrt(2/l) sin((xi+1) pi (z/l + 1/2)) on |z| <= l/2, zero outside.
/// xi is 0-based; xi = 0 is the even ground state.
double exciton_mode(const ValidatedConfig& config, int xi, double z);

/// Longitudinal wavenumber (xi+1) pi / l of exciton basis function xi.
double exciton_wavenumber(const ValidatedConfig& config, int xi);

/// Overlaps between the cavity modes and the slab basis.
///   K(m-1, xi) = int_{-l/2}^{l/2} phi_m chi_xi dz   (N x Xi)
///   D = K K^T                                        (N x N)
struct OverlapSet {
    Eigen::MatrixXd K;
    Eigen::MatrixXd D;
    double L = 0.0;
    double l = 0.0;
    int photon_modes = 0;
    int exciton_modes = 0;
};

/// Closed-form K and D for the truncation in `config`.
OverlapSet overlap_K(const ValidatedConfig& config);

/// Complete-basis limit of D: int_{-l/2}^{l/2} phi_n phi_m dz, closed form.
Eigen::MatrixXd classical_D(const ValidatedConfig& config);

/// Single entries of the closed forms above (m, n 1-based; xi 0-based).
double overlap_entry(double L, double l, int m, int xi);
double classical_D_entry(double L, double l, int n, int m);

}  // namespace polsp::modes
