#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "detail/root_finding.hpp"
#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"
#include "polsp/hopfield.hpp"

namespace polsp::dispersion {

namespace {

using detail::Interval;

bool any_coupling(const ValidatedConfig& config) {
    return std::any_of(config->oscillators.begin(), config->oscillators.end(),
                       [](const OscillatorSpecies& s) { return s.G > 0.0; });
}

// Zeros of S(Omega) between consecutive coupled resonances. S is increasing
// in Omega^2 between its poles, so each gap holds exactly one.
std::vector<double> strength_zeros(const ValidatedConfig& config) {
    std::vector<double> w;
    for (const auto& s : config->oscillators)
        if (s.G > 0.0) w.push_back(s.omega);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        double a = w[i], b = w[i + 1];
        for (int it = 0; it < 200 && !detail::converged(a, b, 1e-15); ++it) {
            const double mid = 0.5 * (a + b);
            if (oscillator_strength_sum(config, mid) < 0.0)
                a = mid;
            else
                b = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

std::vector<double> photon_and_oscillator_poles(const ValidatedConfig& config,
                                                TransverseWavenumber q) {
    std::vector<double> poles{0.0};
    const Eigen::VectorXd Om = modes::photon_frequencies(config, q);
    poles.insert(poles.end(), Om.data(), Om.data() + Om.size());
    for (const auto& s : config->oscillators) poles.push_back(s.omega);
    return poles;
}

void require_single_species(const ValidatedConfig& config, int exciton_modes, const char* what) {
    if (config.species_count() != 1 || config->exciton_modes != exciton_modes)
        throw DimensionError(std::string(what) + " requires S = 1 and Xi = " +
                             std::to_string(exciton_modes));
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Shared cell logic: `count` is the number of positive eigenvalues of a
// matrix pencil that is decreasing in Omega on each interval, `value` a
// function whose sign flips at each simple root.
std::vector<double> roots_by_count(const std::vector<Interval>& intervals, int scan_points,
                                   double rel_tol, const std::function<int(double)>& count,
                                   const std::function<double(double)>& value) {
    std::vector<double> roots;
    for (const auto& iv : intervals) {
        const auto grid = detail::scan_grid(iv, scan_points);
        std::vector<int> c(grid.size());
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            c[i] = count(grid[i]);
            v[i] = value(grid[i]);
        }
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const int drop = c[i] - c[i + 1];
            const int sa = sign_of(v[i]), sb = sign_of(v[i + 1]);
            if (drop < 0)
                throw BracketError("root count increases across [" + std::to_string(grid[i]) +
                                   ", " + std::to_string(grid[i + 1]) + "]");
            if (sa != 0 && sb != 0 && ((drop % 2 == 1) != (sa != sb)))
                throw BracketError("determinant sign and root count disagree on [" +
                                   std::to_string(grid[i]) + ", " + std::to_string(grid[i + 1]) +
                                   "]; refine scan_points");
            if (drop == 1 && sa != 0 && sb != 0) {
                roots.push_back(detail::bisect_sign(value, grid[i], grid[i + 1], sa, rel_tol));
            } else {
                for (int r = 1; r <= drop; ++r)
                    roots.push_back(detail::bisect_count(count, grid[i], grid[i + 1], c[i] - r, rel_tol));
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Eigen::MatrixXd projected_resolvent(const modes::OverlapSet& overlaps, const Eigen::VectorXd& Om,
                                    double x) {
    const Eigen::VectorXd F = (Om.array().square() - x).inverse().matrix();
    return overlaps.K.transpose() * F.asDiagonal() * overlaps.K;
}

}  // namespace

FrequencyWindow default_window(const ValidatedConfig& config, TransverseWavenumber q) {
    return {0.0, search_ceiling(config, q)};
}

double oscillator_strength_sum(const ValidatedConfig& config, double Omega) {
    const double x = Omega * Omega;
    double s = 0.0;
    for (const auto& sp : config->oscillators) s += sp.G * sp.G / (sp.omega * sp.omega - x);
    return s;
}

Eigen::MatrixXd secular_matrix(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                               TransverseWavenumber q, double Omega) {
    const double x = Omega * Omega;
    const Eigen::VectorXd Om = modes::photon_frequencies(config, q);
    const Eigen::VectorXd F = (Om.array().square() - x).inverse().matrix();
    return (x * oscillator_strength_sum(config, Omega)) * F.asDiagonal() * overlaps.D;
}

double secular_determinant(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                           TransverseWavenumber q, double Omega) {
    const double x = Omega * Omega;
    const Eigen::VectorXd Om = modes::photon_frequencies(config, q);
    const int X = static_cast<int>(overlaps.K.cols());
    const Eigen::MatrixXd B =
        (x * oscillator_strength_sum(config, Omega)) * projected_resolvent(overlaps, Om, x);
    return (Eigen::MatrixXd::Identity(X, X) - B).partialPivLu().determinant();
}

std::vector<double> secular_roots(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                                  TransverseWavenumber q, FrequencyWindow window) {
    if (overlaps.K.rows() != config->photon_modes || overlaps.K.cols() != config->exciton_modes)
        throw DimensionError("overlap matrix does not match the config truncation");
    if (!any_coupling(config)) return {};

    const auto& solver = config->solver;
    auto singular = photon_and_oscillator_poles(config, q);
    for (double z : strength_zeros(config)) singular.push_back(z);
    const auto intervals =
        detail::pole_free_intervals(window.lo, window.hi, singular, solver.pole_exclusion);

    const Eigen::VectorXd Om = modes::photon_frequencies(config, q);

    // det(I - x S K^T F K) = (x S)^Xi det(R) with R = I / (x S) - K^T F K.
    // R decreases in the Loewner order on every interval, so its positive
    // inertia counts the roots still to the right.
    const auto count = [&](double Omega) {
        const double x = Omega * Omega;
        const double h = 1.0 / (x * oscillator_strength_sum(config, Omega));
        Eigen::MatrixXd R = -projected_resolvent(overlaps, Om, x);
        R.diagonal().array() += h;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw ConvergenceError("inertia eigensolve failed");
        return static_cast<int>((es.eigenvalues().array() > 0.0).count());
    };
    const auto value = [&](double Omega) { return secular_determinant(config, overlaps, q, Omega); };
    auto roots = roots_by_count(intervals, solver.scan_points, solver.root_tol, count, value);

    // Roots sitting inside an exclusion neighborhood (decoupled photon modes,
    // dark exciton combinations) are taken from the dynamical spectrum.
    auto poles = photon_and_oscillator_poles(config, q);
    poles.erase(poles.begin());
    const auto near_pole = [&](double w) {
        return std::any_of(poles.begin(), poles.end(),
                           [&](double p) { return std::abs(w - p) <= solver.pole_exclusion; });
    };
    const auto in_window = [&](double w) { return w > window.lo && w <= window.hi; };
    if (std::any_of(poles.begin(), poles.end(), [&](double p) {
            return p + solver.pole_exclusion > window.lo && p - solver.pole_exclusion <= window.hi;
        })) {
        for (const auto& mode : hopfield::diagonalize(hopfield::build_dynamical_matrix(config, overlaps, q)))
            if (in_window(mode.Omega) && near_pole(mode.Omega)) roots.push_back(mode.Omega);
        std::sort(roots.begin(), roots.end());
    }
    return roots;
}

double one_exciton_function(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                            TransverseWavenumber q, double Omega) {
    require_single_species(config, 1, "one_exciton");
    const auto& sp = config->oscillators.front();
    const double x = Omega * Omega;
    double sum = 0.0;
    for (int m = 1; m <= config->photon_modes; ++m) {
        const double Om = modes::photon_frequency(config, m, q);
        const double k = overlaps.K(m - 1, 0);
        sum += k * k / (Om * Om - x);
    }
    return 1.0 - sp.G * sp.G * x / (sp.omega * sp.omega - x) * sum;
}

std::vector<double> one_exciton_roots(const ValidatedConfig& config,
                                      const modes::OverlapSet& overlaps, TransverseWavenumber q,
                                      FrequencyWindow window) {
    require_single_species(config, 1, "one_exciton");
    if (!any_coupling(config)) return {};
    const auto& solver = config->solver;
    const auto intervals = detail::pole_free_intervals(
        window.lo, window.hi, photon_and_oscillator_poles(config, q), solver.pole_exclusion);
    const auto f = [&](double Omega) { return one_exciton_function(config, overlaps, q, Omega); };

    std::vector<double> roots;
    for (const auto& iv : intervals) {
        const auto grid = detail::scan_grid(iv, solver.scan_points);
        int found = 0;
        double prev = f(grid.front());
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double cur = f(grid[i]);
            if (sign_of(prev) * sign_of(cur) < 0) {
                if (++found > 1)
                    throw BracketError("more than one one-exciton root between consecutive poles");
                roots.push_back(detail::bisect_sign(f, grid[i - 1], grid[i], prev, solver.root_tol));
            }
            prev = cur;
        }
    }
    return roots;
}

double two_exciton_function(const ValidatedConfig& config, const modes::OverlapSet& overlaps,
                            TransverseWavenumber q, double Omega) {
    require_single_species(config, 2, "two_exciton");
    const auto& sp = config->oscillators.front();
    const double x = Omega * Omega;
    double s00 = 0.0, s11 = 0.0, s01 = 0.0;
    for (int m = 1; m <= config->photon_modes; ++m) {
        const double Om = modes::photon_frequency(config, m, q);
        const double d = Om * Om - x;
        const double k0 = overlaps.K(m - 1, 0), k1 = overlaps.K(m - 1, 1);
        s00 += k0 * k0 / d;
        s11 += k1 * k1 / d;
        s01 += k0 * k1 / d;
    }
    const double pre = sp.G * sp.G * x / (sp.omega * sp.omega - x);
    return (1.0 - pre * s00) * (1.0 - pre * s11) - (pre * s01) * (pre * s01);
}

std::vector<double> two_exciton_roots(const ValidatedConfig& config,
                                      const modes::OverlapSet& overlaps, TransverseWavenumber q,
                                      FrequencyWindow window) {
    require_single_species(config, 2, "two_exciton");
    if (!any_coupling(config)) return {};
    const auto& solver = config->solver;
    const auto& sp = config->oscillators.front();
    const auto intervals = detail::pole_free_intervals(
        window.lo, window.hi, photon_and_oscillator_poles(config, q), solver.pole_exclusion);

    // Inertia of the 2x2 pencil h I - s, h = (omega_0^2 - x) / (G^2 x).
    const auto count = [&](double Omega) {
        const double x = Omega * Omega;
        double s00 = 0.0, s11 = 0.0, s01 = 0.0;
        for (int m = 1; m <= config->photon_modes; ++m) {
            const double Om = modes::photon_frequency(config, m, q);
            const double d = Om * Om - x;
            const double k0 = overlaps.K(m - 1, 0), k1 = overlaps.K(m - 1, 1);
            s00 += k0 * k0 / d;
            s11 += k1 * k1 / d;
            s01 += k0 * k1 / d;
        }
        const double h = (sp.omega * sp.omega - x) / (sp.G * sp.G * x);
        const double p = h - s00, t = h - s11;
        const double det = p * t - s01 * s01;
        if (det < 0.0) return 1;
        if (det > 0.0) return p + t > 0.0 ? 2 : 0;
        return p + t > 0.0 ? 1 : 0;
    };
    const auto value = [&](double Omega) { return two_exciton_function(config, overlaps, q, Omega); };
    return roots_by_count(intervals, solver.scan_points, solver.root_tol, count, value);
}

}  // namespace polsp::dispersion
