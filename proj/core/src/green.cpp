#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "detail/green_system.hpp"
#include "detail/root_finding.hpp"
#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"

namespace polsp {

namespace detail {

namespace {

constexpr double pi = std::numbers::pi;
// Relative distance |k^2 - Q^2| / k^2 below which the closed forms lose
// accuracy to cancellation.
constexpr double kResonantGap = 1e-3;
constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 8;
constexpr double kQuadAccept = 1e-10;

template <class F>
double integrate(F f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    if (b <= a) return 0.0;
    double err = 0.0, l1 = 0.0;
    const double v = gauss_kronrod<double, 61>::integrate(f, a, b, kQuadDepth, kQuadTol, &err, &l1);
    if (!(err <= kQuadAccept * std::max(l1, 1.0)))
        throw QuadratureError("Green-kernel integral did not converge (error estimate " +
                              std::to_string(err) + ")");
    return v;
}

}  // namespace

GreenSlabData green_slab_data(double l, int exciton_modes, double q2, bool force_quadrature) {
    const Fundamental f{q2};
    const double a = std::sqrt(2.0 / l);
    const int X = exciton_modes;

    GreenSlabData d;
    d.moment_sin.resize(X);
    d.moment_cos.resize(X);
    d.particular.resize(X, 4);
    d.kernel.resize(X, X);

    std::vector<double> k(X), gap(X), alpha(X), beta(X);
    std::vector<bool> resonant(X);
    for (int xi = 0; xi < X; ++xi) {
        k[xi] = (xi + 1) * pi / l;
        gap[xi] = k[xi] * k[xi] - q2;
        resonant[xi] = force_quadrature || std::abs(gap[xi]) < kResonantGap * k[xi] * k[xi];
    }

    const auto chi = [&](int xi, double u) { return a * std::sin(k[xi] * u); };

    for (int xi = 0; xi < X; ++xi) {
        if (!resonant[xi]) {
            const double sgn = (xi % 2 == 0) ? 1.0 : -1.0;
            const double Is = k[xi] * sgn * f.S(l) / gap[xi];
            const double Ic = k[xi] * (1.0 + sgn * f.C(l)) / gap[xi];
            d.moment_sin(xi) = a * Is;
            d.moment_cos(xi) = a * Ic;
            // P = chi / gap + alpha c(u) + beta s(u)
            alpha[xi] = -0.5 * a * Is;
            beta[xi] = 0.5 * a * Ic - a * k[xi] / gap[xi];
            d.particular(xi, 0) = alpha[xi];
            d.particular(xi, 1) = 0.5 * a * Ic;
            d.particular(xi, 2) = alpha[xi] * f.C(l) + beta[xi] * f.S(l);
            d.particular(xi, 3) = -a * k[xi] * sgn / gap[xi] - alpha[xi] * q2 * f.S(l) + beta[xi] * f.C(l);
        } else {
            d.moment_sin(xi) = integrate([&](double u) { return chi(xi, u) * f.S(u); }, 0.0, l);
            d.moment_cos(xi) = integrate([&](double u) { return chi(xi, u) * f.C(u); }, 0.0, l);
            d.particular(xi, 0) = -0.5 * d.moment_sin(xi);
            d.particular(xi, 1) = 0.5 * d.moment_cos(xi);
            d.particular(xi, 2) =
                -0.5 * integrate([&](double u) { return f.S(l - u) * chi(xi, u); }, 0.0, l);
            d.particular(xi, 3) =
                -0.5 * integrate([&](double u) { return f.C(l - u) * chi(xi, u); }, 0.0, l);
        }
    }

    for (int eta = 0; eta < X; ++eta) {
        if (!resonant[eta]) {
            for (int xi = 0; xi < X; ++xi)
                d.kernel(xi, eta) = (xi == eta ? 1.0 / gap[eta] : 0.0) +
                                    alpha[eta] * d.moment_cos(xi) + beta[eta] * d.moment_sin(xi);
            continue;
        }
        const auto P = [&](double u) {
            const double left = integrate([&](double v) { return f.S(u - v) * chi(eta, v); }, 0.0, u);
            const double right = integrate([&](double v) { return f.S(v - u) * chi(eta, v); }, u, l);
            return -0.5 * (left + right);
        };
        for (int xi = 0; xi < X; ++xi)
            d.kernel(xi, eta) = integrate([&](double u) { return chi(xi, u) * P(u); }, 0.0, l);
    }
    return d;
}

Eigen::MatrixXd green_matching_matrix(double L, double l, double q2, double lambda,
                                      const GreenSlabData& slab) {
    const Fundamental f{q2};
    const int X = static_cast<int>(slab.kernel.rows());
    const double gap = 0.5 * (L - l);
    const int cA = X, cB = X + 1, c1 = X + 2, c3 = X + 3;

    // Unknowns: c_xi, inner A c(u) + B s(u), outer alpha_1 s(z + L/2),
    // alpha_3 s(z - L/2). The inner basis is anchored at u = 0 instead of
    // z = 0; the change of basis has unit determinant.
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(X + 4, X + 4);
    G.topLeftCorner(X, X) = Eigen::MatrixXd::Identity(X, X) - lambda * slab.kernel;
    G.block(0, cA, X, 1) = -lambda * slab.moment_cos;
    G.block(0, cB, X, 1) = -lambda * slab.moment_sin;

    const int r0 = X, r1 = X + 1, r2 = X + 2, r3 = X + 3;
    for (int eta = 0; eta < X; ++eta) {
        G(r0, eta) = slab.particular(eta, 0);
        G(r1, eta) = slab.particular(eta, 1);
        G(r2, eta) = slab.particular(eta, 2);
        G(r3, eta) = slab.particular(eta, 3);
    }
    // A(-l/2) and A'(-l/2) against the left outer solution.
    G(r0, cA) = 1.0;
    G(r0, cB) = 0.0;
    G(r0, c1) = -f.S(gap);
    G(r1, cA) = 0.0;
    G(r1, cB) = 1.0;
    G(r1, c1) = -f.C(gap);
    // A(l/2) and A'(l/2) against the right outer solution.
    G(r2, cA) = f.C(l);
    G(r2, cB) = f.S(l);
    G(r2, c3) = f.S(gap);
    G(r3, cA) = -q2 * f.S(l);
    G(r3, cB) = f.C(l);
    G(r3, c3) = -f.C(gap);
    return G;
}

}  // namespace detail

namespace dispersion {

double green_determinant(const ValidatedConfig& config, double Omega, TransverseWavenumber q) {
    const auto& cfg = config.get();
    const double q2 = Omega * Omega / (cfg.c * cfg.c) - q.value() * q.value();
    if (q2 < 0.0 && !cfg.solver.evanescent)
        throw EvanescentError("q > Omega/c at Omega=" + std::to_string(Omega) +
                              "; enable solver.evanescent for the hyperbolic branch");
    for (const auto& s : cfg.oscillators)
        if (s.G > 0.0 && Omega == s.omega)
            throw PoleError("Green determinant evaluated at the resonance " + std::to_string(s.omega));
    const double lambda = oscillator_strength_sum(config, Omega) * Omega * Omega / (cfg.c * cfg.c);
    const auto slab = detail::green_slab_data(cfg.l, cfg.exciton_modes, q2, false);
    return detail::green_matching_matrix(cfg.L, cfg.l, q2, lambda, slab).partialPivLu().determinant();
}

std::vector<double> green_roots(const ValidatedConfig& config, TransverseWavenumber q,
                                FrequencyWindow window) {
    const auto& cfg = config.get();
    const auto& solver = cfg.solver;
    double lo = window.lo;
    if (!solver.evanescent) lo = std::max(lo, cfg.c * q.value());

    std::vector<double> singular{0.0};
    for (const auto& s : cfg.oscillators) singular.push_back(s.omega);
    const auto intervals = detail::pole_free_intervals(lo, window.hi, singular, solver.pole_exclusion);

    // Scan cells follow the empty-cavity mode spacing so density does not
    // depend on the window width.
    std::vector<double> breaks;
    for (int m = 1;; ++m) {
        const double w = cfg.c * std::hypot(std::numbers::pi * m / cfg.L, q.value());
        if (w >= window.hi) break;
        breaks.push_back(w);
    }

    const auto f = [&](double Omega) { return green_determinant(config, Omega, q); };
    std::vector<double> roots;
    for (const auto& iv : intervals) {
        std::vector<double> edges{iv.lo};
        for (double b : breaks)
            if (b > iv.lo && b < iv.hi) edges.push_back(b);
        edges.push_back(iv.hi);
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const auto grid = detail::scan_grid({edges[e], edges[e + 1]}, solver.scan_points);
            double prev = f(grid.front());
            for (std::size_t i = 1; i < grid.size(); ++i) {
                const double cur = f(grid[i]);
                if (cur == 0.0) {
                    roots.push_back(grid[i]);
                } else if (prev != 0.0 && (prev > 0.0) != (cur > 0.0)) {
                    roots.push_back(detail::bisect_sign(f, grid[i - 1], grid[i], prev, solver.root_tol));
                }
                prev = cur;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace dispersion

}  // namespace polsp
