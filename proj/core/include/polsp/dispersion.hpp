#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polsp/kk.hpp"
#include "polsp/model.hpp"
#include "polsp/modes.hpp"

namespace polsp::dispersion {

/// Half-open search range (lo, hi] in rad/time.
struct FrequencyWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// (0, search_ceiling(config, q)].
FrequencyWindow default_window(const ValidatedConfig& config, TransverseWavenumber q);

/// S(Omega) = sum_j G_j^2 / (omega_j^2 - Omega^2).
double oscillator_strength_sum(const ValidatedConfig& config, double Omega);

/// M_mn(Omega) = Omega^2 S(Omega) D_mn / (Omega_m^2 - Omega^2), the kernel of
/// T_m = sum_n M_mn T_n with T_m = (W_m - Y_m) / sqrt(Omega_m).
Eigen::MatrixXd secular_matrix(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                               TransverseWavenumber q, double Omega);

/// det(I - M(Omega)), evaluated through the equal Xi x Xi determinant
/// det(I - Omega^2 S K^T F K) with F = diag(1 / (Omega_m^2 - Omega^2)).
double secular_determinant(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                           TransverseWavenumber q, double Omega);

/// All zeros of det(I - M) in the window, ascending, repeated by multiplicity.
/// The determinant is not scanned within pole_exclusion of any Omega_m or
/// omega_j; roots there are taken from the dynamical spectrum built on the
/// same overlaps. Throws BracketError when the determinant sign and the root
/// count disagree on a scan cell.
std::vector<double> secular_roots(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                                  TransverseWavenumber q, FrequencyWindow window);

/// Scalar quantum-well relation G^2 Omega^2 / (omega_0^2 - Omega^2) *
/// sum_m K_{m,0}^2 / (Omega_m^2 - Omega^2) = 1. Requires Xi = 1, S = 1
/// (DimensionError otherwise).
double one_exciton_function(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                            TransverseWavenumber q, double Omega);
std::vector<double> one_exciton_roots(const ValidatedConfig& config,
                                      const modes::OverlapSet& overlaps, TransverseWavenumber q,
                                      FrequencyWindow window);

/// [1 - s00][1 - s11] - s01^2 with s_ab = G^2 Omega^2 / (omega_0^2 - Omega^2) *
/// sum_m K_{m,a} K_{m,b} / (Omega_m^2 - Omega^2). Requires Xi = 2, S = 1.
double two_exciton_function(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                            TransverseWavenumber q, double Omega);
std::vector<double> two_exciton_roots(const ValidatedConfig& config,
                                      const modes::OverlapSet& overlaps, TransverseWavenumber q,
                                      FrequencyWindow window);

/// Determinant of the (Xi + 4) homogeneous matching system of the
/// integro-differential wave equation in the slab (unknowns c_xi, two inner
/// fundamental amplitudes, two outer amplitudes). Its zeros are the
/// polariton frequencies for an untruncated photon basis. Throws
/// EvanescentError when q > Omega/c and solver.evanescent is off, PoleError
/// at Omega = omega_j, QuadratureError when a near-resonant fallback integral
/// fails to converge.
double green_determinant(const ValidatedConfig& config, double Omega, TransverseWavenumber q);

/// Sign-change roots of green_determinant in the window.
std::vector<double> green_roots(const ValidatedConfig& config, TransverseWavenumber q,
                                FrequencyWindow window);

/// n^2(Omega) for the classical slab.
using IndexModel = std::function<double(double)>;

/// Residuals of the two classical branches, rescaled to be finite across the
/// tan/cot singularities:
///   symmetric:     Q'^2 s(Q,a) s(Q',b) - c(Q,a) c(Q',b)
///   antisymmetric: s(Q,a) c(Q',b) + c(Q,a) s(Q',b)
/// with a = (L-l)/2, b = l/2, c(Q,x) = cos(Qx), s(Q,x) = sin(Qx)/Q
/// (cosh/sinh for imaginary Q).
struct ClassicalResidual {
    double symmetric = 0.0;
    double antisymmetric = 0.0;
};
ClassicalResidual classical_residual(const ValidatedConfig& config, const IndexModel& n_squared,
                                     double Omega, TransverseWavenumber q);

/// Roots of the classical slab relations; `symmetric` holds the field-even
/// branch (odd m in the empty cavity), `antisymmetric` the field-odd branch.
struct ClassicalRoots {
    std::vector<double> symmetric;
    std::vector<double> antisymmetric;

    std::vector<double> merged() const;
};
ClassicalRoots classical_roots(const ValidatedConfig& config, const IndexModel& n_squared,
                               TransverseWavenumber q, FrequencyWindow window,
                               const std::vector<double>& singular_points = {});
/// Lossless model: n^2 = 1 + chi'(Omega), singular at the model's resonances.
ClassicalRoots classical_roots(const ValidatedConfig& config, const kk::SusceptibilityModel& model,
                               TransverseWavenumber q, FrequencyWindow window);

/// Roots for `method` at a single q. The dynamical method reports all
/// N + S Xi frequencies and ignores the window.
std::vector<double> roots_at(const ValidatedConfig& config, Method method, TransverseWavenumber q,
                             FrequencyWindow window);

struct BranchSample {
    double q = 0.0;
    double Omega = 0.0;
};

struct DispersionCurve {
    Method method = Method::dynamical;
    int photon_modes = 0;
    int exciton_modes = 0;
    int species = 0;
    std::vector<std::vector<BranchSample>> branches;
};

/// Links per-q root lists into branches by nearest-frequency assignment
/// under the slope cap. Throws BranchMatchError when a link is ambiguous.
std::vector<std::vector<BranchSample>> link_branches(
    const std::vector<double>& q_grid, const std::vector<std::vector<double>>& roots,
    double slope_cap, double tol);

/// Runs solver.method at each q (in parallel over `threads` workers), then
/// links branches. q_grid must be ascending; each q searches default_window.
/// The result does not depend on the thread count.
DispersionCurve sweep(const ValidatedConfig& config, const std::vector<double>& q_grid,
                      int threads = 1);

}  // namespace polsp::dispersion
