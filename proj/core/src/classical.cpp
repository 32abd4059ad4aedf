#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/root_finding.hpp"
#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"

namespace polsp::dispersion {

namespace {

constexpr long kMaxSamples = 1'000'000;

double phase(const ValidatedConfig& config, const IndexModel& n_squared, double Omega, double q) {
    const auto& cfg = config.get();
    const double k0 = Omega / cfg.c;
    const double Q2 = k0 * k0 - q * q;
    const double Qp2 = n_squared(Omega) * k0 * k0 - q * q;
    return std::sqrt(std::abs(Q2)) * 0.5 * (cfg.L - cfg.l) + std::sqrt(std::abs(Qp2)) * 0.5 * cfg.l;
}

struct Scan {
    std::vector<double> symmetric;
    std::vector<double> antisymmetric;
};

// Walks one pole-free interval with a step that keeps the total field phase
// change per step under 2 pi / scan_points.
void scan_interval(const ValidatedConfig& config, const IndexModel& n_squared, TransverseWavenumber q,
                   detail::Interval iv, Scan& out) {
    const auto& solver = config->solver;
    const double dphi_max = 2.0 * std::numbers::pi / solver.scan_points;
    const double width = iv.hi - iv.lo;
    const double h_min = width * 1e-14;

    const auto res = [&](double w) { return classical_residual(config, n_squared, w, q); };
    const auto sym = [&](double w) { return res(w).symmetric; };
    const auto anti = [&](double w) { return res(w).antisymmetric; };

    double x = iv.lo;
    ClassicalResidual r = res(x);
    double ph = phase(config, n_squared, x, q.value());
    double h = width / solver.scan_points;
    long samples = 0;
    while (x < iv.hi) {
        double xn = std::min(iv.hi, x + h);
        double phn = phase(config, n_squared, xn, q.value());
        while (std::abs(phn - ph) > dphi_max && xn - x > h_min) {
            h *= 0.5;
            xn = std::min(iv.hi, x + h);
            phn = phase(config, n_squared, xn, q.value());
        }
        if (++samples > kMaxSamples)
            throw BracketError("classical scan needs more than 1e6 samples on [" +
                               std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                               "]; widen pole_exclusion");
        const ClassicalResidual rn = res(xn);
        if (rn.symmetric == 0.0)
            out.symmetric.push_back(xn);
        else if (r.symmetric != 0.0 && (r.symmetric > 0.0) != (rn.symmetric > 0.0))
            out.symmetric.push_back(detail::bisect_sign(sym, x, xn, r.symmetric, solver.root_tol));
        if (rn.antisymmetric == 0.0)
            out.antisymmetric.push_back(xn);
        else if (r.antisymmetric != 0.0 && (r.antisymmetric > 0.0) != (rn.antisymmetric > 0.0))
            out.antisymmetric.push_back(
                detail::bisect_sign(anti, x, xn, r.antisymmetric, solver.root_tol));
        if (std::abs(phn - ph) < 0.5 * dphi_max) h *= 2.0;
        x = xn;
        r = rn;
        ph = phn;
    }
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<double> ClassicalRoots::merged() const {
    std::vector<double> all = symmetric;
    all.insert(all.end(), antisymmetric.begin(), antisymmetric.end());
    std::sort(all.begin(), all.end());
    return all;
}

ClassicalResidual classical_residual(const ValidatedConfig& config, const IndexModel& n_squared,
                                     double Omega, TransverseWavenumber q) {
    const auto& cfg = config.get();
    const double k0 = Omega / cfg.c;
    const double Q2 = k0 * k0 - q.value() * q.value();
    if (Q2 < 0.0 && !cfg.solver.evanescent)
        throw EvanescentError("q > Omega/c at Omega=" + std::to_string(Omega) +
                              "; enable solver.evanescent for the hyperbolic branch");
    const double n2 = n_squared(Omega);
    if (!std::isfinite(n2)) throw PoleError("n^2 is not finite at Omega=" + std::to_string(Omega));
    const double Qp2 = n2 * k0 * k0 - q.value() * q.value();

    const double a = 0.5 * (cfg.L - cfg.l), b = 0.5 * cfg.l;
    const detail::Fundamental out{Q2}, in{Qp2};
    return {Qp2 * out.S(a) * in.S(b) - out.C(a) * in.C(b), out.S(a) * in.C(b) + out.C(a) * in.S(b)};
}

ClassicalRoots classical_roots(const ValidatedConfig& config, const IndexModel& n_squared,
                               TransverseWavenumber q, FrequencyWindow window,
                               const std::vector<double>& singular_points) {
    const auto& cfg = config.get();
    double lo = window.lo;
    if (!cfg.solver.evanescent) lo = std::max(lo, cfg.c * q.value());

    std::vector<double> singular = singular_points;
    singular.push_back(0.0);
    const auto intervals =
        detail::pole_free_intervals(lo, window.hi, singular, cfg.solver.pole_exclusion);

    Scan scan;
    for (const auto& iv : intervals) scan_interval(config, n_squared, q, iv, scan);
    sort_unique(scan.symmetric);
    sort_unique(scan.antisymmetric);
    return {std::move(scan.symmetric), std::move(scan.antisymmetric)};
}

ClassicalRoots classical_roots(const ValidatedConfig& config, const kk::SusceptibilityModel& model,
                               TransverseWavenumber q, FrequencyWindow window) {
    const IndexModel n2 = [&](double Omega) { return 1.0 + kk::chi_prime(model, Omega); };
    return classical_roots(config, n2, q, window, kk::resonances(model));
}

}  // namespace polsp::dispersion
