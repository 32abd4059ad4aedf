#pragma once

#include <Eigen/Dense>

#include "polsp/model.hpp"

namespace polsp::detail {

/// Slab-side ingredients of the Green-function matching problem, in the
/// coordinate u = z + l/2 in [0, l]. For basis function xi:
///   moment_sin(xi) = int chi_xi(u) s(u) du,  moment_cos(xi) = int chi_xi(u) c(u) du
///   particular(xi) = P_xi(0), P_xi'(0), P_xi(l), P_xi'(l)
///   kernel(xi, eta) = int chi_xi(u) P_eta(u) du
/// where P_eta(u) = int G(u, u') chi_eta(u') du', G = -s(|u - u'|) / 2, and
/// c, s are the cos-like / sin(Qx)/Q-like fundamental solutions.
struct GreenSlabData {
    Eigen::VectorXd moment_sin;
    Eigen::VectorXd moment_cos;
    Eigen::MatrixXd particular;  // Xi x 4
    Eigen::MatrixXd kernel;      // Xi x Xi
};

/// Closed forms away from resonance |Q^2 - k_xi^2| small; adaptive quadrature
/// there or everywhere when `force_quadrature` is set.
GreenSlabData green_slab_data(double l, int exciton_modes, double q2, bool force_quadrature);

/// Assembles the (Xi + 4) matching matrix for coupling prefactor
/// lambda = S(Omega) Omega^2 / c^2.
Eigen::MatrixXd green_matching_matrix(double L, double l, double q2, double lambda,
                                      const GreenSlabData& slab);

}  // namespace polsp::detail
