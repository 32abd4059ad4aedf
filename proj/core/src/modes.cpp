#include "polsp/modes.hpp"

#include <cmath>
#include <numbers>

#include "polsp/errors.hpp"

namespace polsp::modes {

namespace {

constexpr double pi = std::numbers::pi;

// Arguments closer than this to a commensurate point use the analytic limit.
constexpr double kDegenerateArgument = 1e-9;

double sinc(double x) {
    if (std::abs(x) < kDegenerateArgument) return 1.0;
    return std::sin(x) / x;
}

// cos(k pi / 2) for integer k, exact.
double cos_half_pi(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return 1.0;
        case 2: return -1.0;
        default: return 0.0;
    }
}

// int_{-h}^{h} sin(a z + i pi/2) sin(b z + j pi/2) dz for integer phases i, j,
// via sin A sin B = (cos(A-B) - cos(A+B)) / 2.
double sine_product_integral(double a, long i, double b, long j, double h) {
    return h * (cos_half_pi(i - j) * sinc((a - b) * h) - cos_half_pi(i + j) * sinc((a + b) * h));
}

}  // namespace

double photon_wavenumber(const ValidatedConfig& config, int m) {
    return pi * m / config->L;
}

double photon_frequency(const ValidatedConfig& config, int m, TransverseWavenumber q) {
    if (m < 1 || m > config->photon_modes)
        throw IndexError("photon mode index " + std::to_string(m) + " outside [1, " +
                         std::to_string(config->photon_modes) + "]");
    return config->c * std::hypot(photon_wavenumber(config, m), q.value());
}

Eigen::VectorXd photon_frequencies(const ValidatedConfig& config, TransverseWavenumber q) {
    Eigen::VectorXd out(config->photon_modes);
    for (int m = 1; m <= config->photon_modes; ++m) out(m - 1) = photon_frequency(config, m, q);
    return out;
}

double photon_mode(const ValidatedConfig& config, int m, double z) {
    const double L = config->L;
    if (std::abs(z) > 0.5 * L) return 0.0;
    return std::sqrt(2.0 / L) * std::sin(m * pi * (z / L + 0.5));
}

double exciton_mode(const ValidatedConfig& config, int xi, double z) {
    const double l = config->l;
    if (std::abs(z) > 0.5 * l) return 0.0;
    return std::sqrt(2.0 / l) * std::sin((xi + 1) * pi * (z / l + 0.5));
}

double exciton_wavenumber(const ValidatedConfig& config, int xi) {
    return (xi + 1) * pi / config->l;
}

double overlap_entry(double L, double l, int m, int xi) {
    const double norm = 2.0 / std::sqrt(L * l);
    return norm * sine_product_integral(pi * m / L, m, pi * (xi + 1) / l, xi + 1, 0.5 * l);
}

double classical_D_entry(double L, double l, int n, int m) {
    return (2.0 / L) * sine_product_integral(pi * n / L, n, pi * m / L, m, 0.5 * l);
}

OverlapSet overlap_K(const ValidatedConfig& config) {
    const int N = config->photon_modes;
    const int X = config->exciton_modes;
    OverlapSet out;
    out.L = config->L;
    out.l = config->l;
    out.photon_modes = N;
    out.exciton_modes = X;
    out.K.resize(N, X);
    for (int m = 1; m <= N; ++m)
        for (int xi = 0; xi < X; ++xi) out.K(m - 1, xi) = overlap_entry(config->L, config->l, m, xi);
    out.D = out.K * out.K.transpose();
    return out;
}

Eigen::MatrixXd classical_D(const ValidatedConfig& config) {
    const int N = config->photon_modes;
    Eigen::MatrixXd D(N, N);
    for (int n = 1; n <= N; ++n)
        for (int m = n; m <= N; ++m) D(n - 1, m - 1) = D(m - 1, n - 1) = classical_D_entry(config->L, config->l, n, m);
    return D;
}

}  // namespace polsp::modes
