#include "polsp/kk.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "polsp/errors.hpp"

namespace polsp::kk {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kWarnFraction = 1e-2;

// Linear interpolation of (x, y) at t, zero outside [x.front(), x.back()].
double interpolate(const std::vector<double>& x, const std::vector<double>& y, double t) {
    if (t < x.front() || t > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    if (it == x.end()) return y.back();
    const std::size_t k = static_cast<std::size_t>(it - x.begin());
    if (k == 0) return y.front();
    const double w = (t - x[k - 1]) / (x[k] - x[k - 1]);
    return y[k - 1] + w * (y[k] - y[k - 1]);
}

// PV int f(w) / (w - s) dw over the piecewise-linear samples. The
// log|node - s| term is dropped at a node equal to s: between two segments
// its coefficients cancel, at an outer edge the caller supplies the
// matching tail or accepts the truncation.
double cauchy(const std::vector<double>& x, const std::vector<double>& f, double s) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double a = x[k], b = x[k + 1];
        const double slope = (f[k + 1] - f[k]) / (b - a);
        const double fs = f[k] + slope * (s - a);
        double logs = 0.0;
        if (b != s) logs += std::log(std::abs(b - s));
        if (a != s) logs -= std::log(std::abs(a - s));
        if (fs != 0.0) sum += fs * logs;
        sum += slope * (b - a);
    }
    return sum;
}

// Local cubic through nodes k-1..k+2 (shifted inward at the ends) on each
// interval, in monomials of t = w - midpoint. Values stay continuous at the
// nodes, so the log cancellation of cauchy() still holds.
struct CubicPanels {
    std::vector<double> x;
    std::vector<std::array<double, 4>> coef;
};

CubicPanels cubic_panels(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    CubicPanels p{x, std::vector<std::array<double, 4>>(n - 1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::size_t first = std::min(k == 0 ? 0 : k - 1, n - 4);
        const double c = 0.5 * (x[k] + x[k + 1]);
        double t[4], d[4];
        for (int j = 0; j < 4; ++j) {
            t[j] = x[first + j] - c;
            d[j] = f[first + j];
        }
        for (int lvl = 1; lvl < 4; ++lvl)
            for (int j = 3; j >= lvl; --j) d[j] = (d[j] - d[j - 1]) / (t[j] - t[j - lvl]);
        std::array<double, 4> m{d[3], 0.0, 0.0, 0.0};
        for (int j = 2; j >= 0; --j) {
            for (int i = 3; i >= 1; --i) m[i] = m[i - 1] - t[j] * m[i];
            m[0] = d[j] - t[j] * m[0];
        }
        p.coef[k] = m;
    }
    return p;
}

double cauchy(const CubicPanels& p, double s) {
    const auto& x = p.x;
    const auto node_log = [&](double w) { return w == s ? 0.0 : std::log(std::abs(w - s)); };
    double sum = 0.0;
    double log_a = node_log(x[0]);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double a = x[k], b = x[k + 1];
        const double h = b - a, sp = s - 0.5 * (a + b);
        const auto& m = p.coef[k];
        const double log_b = node_log(b);
        const double ps = m[0] + sp * (m[1] + sp * (m[2] + sp * m[3]));
        if (ps != 0.0) sum += ps * (log_b - log_a);
        sum += h * (m[1] + m[2] * sp + m[3] * (h * h / 12.0 + sp * sp));
        log_a = log_b;
    }
    return sum;
}

// T(W) = int_b^inf dw / (w^2 (w^2 - W^2)), with log|b - W| dropped at W = b.
double tail_kernel(double b, double W) {
    if (W < 1e-3 * b) {
        const double r = W * W / (b * b);
        return (1.0 / 3.0 + r / 5.0 + r * r / 7.0) / (b * b * b);
    }
    double lg = std::log(b + W);
    if (W != b) lg -= std::log(std::abs(b - W));
    return (lg / (2.0 * W) - 1.0 / b) / (W * W);
}

void check_series(const SampledSeries& s) {
    if (s.omega.size() != s.value.size())
        throw GridError("omega and value columns differ in length");
    if (s.omega.size() < 2) throw GridError("a sampled series needs at least two points");
    for (std::size_t i = 0; i < s.omega.size(); ++i) {
        if (!std::isfinite(s.omega[i]) || !std::isfinite(s.value[i]))
            throw GridError("non-finite sample at index " + std::to_string(i));
        if (s.omega[i] < 0.0) throw GridError("negative frequency at index " + std::to_string(i));
        if (i > 0 && !(s.omega[i] > s.omega[i - 1]))
            throw GridError("grid not strictly ascending at index " + std::to_string(i));
    }
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

void check(const SampledStrength& s) {
    check_series({s.omega, s.G2});
    for (std::size_t i = 0; i < s.G2.size(); ++i)
        if (s.G2[i] < 0.0) throw GridError("negative oscillator strength at index " + std::to_string(i));
}

double chi_prime(const SusceptibilityModel& model, double Omega) {
    if (const auto* set = std::get_if<LorentzSet>(&model)) {
        double sum = 0.0;
        for (const auto& sp : set->species) {
            if (sp.G == 0.0) continue;
            if (Omega == sp.omega)
                throw PoleError("chi' evaluated at the resonance " + std::to_string(sp.omega));
            sum += sp.G * sp.G / (sp.omega * sp.omega - Omega * Omega);
        }
        return sum;
    }
    const auto& s = std::get<SampledStrength>(model);
    check(s);
    const double W = std::abs(Omega);
    if ((W == s.omega.front() && s.G2.front() != 0.0) || (W == s.omega.back() && s.G2.back() != 0.0))
        throw PoleError("chi' diverges at the edge of the sampled strength");
    if (W == 0.0) {
        if (s.omega.front() == 0.0 && (s.G2[0] != 0.0 || s.G2[1] != 0.0))
            throw PoleError("chi'(0) diverges for strength that does not vanish quadratically at 0");
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < s.omega.size(); ++k) {
            const double a = s.omega[k], b = s.omega[k + 1];
            if (a == 0.0) continue;  // zero on this segment by the check above
            const double slope = (s.G2[k + 1] - s.G2[k]) / (b - a);
            const double icpt = s.G2[k] - slope * a;
            sum += icpt * (1.0 / a - 1.0 / b) + slope * std::log(b / a);
        }
        return sum;
    }
    return (cauchy(s.omega, s.G2, W) - cauchy(s.omega, s.G2, -W)) / (2.0 * W);
}

double chi_double_prime(const SampledStrength& s, double Omega) {
    check(s);
    if (Omega < 0.0) return -chi_double_prime(s, -Omega);
    const double g = interpolate(s.omega, s.G2, Omega);
    if (Omega == 0.0) {
        if (g != 0.0) throw PoleError("chi''(0) diverges for nonzero strength at omega = 0");
        return 0.0;
    }
    return pi * g / (2.0 * Omega);
}

std::vector<double> resonances(const SusceptibilityModel& model) {
    std::vector<double> out;
    if (const auto* set = std::get_if<LorentzSet>(&model))
        for (const auto& sp : set->species)
            if (sp.G > 0.0) out.push_back(sp.omega);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<OscillatorSpecies> discretize(const SampledStrength& s) {
    check(s);
    const std::size_t n = s.omega.size();
    std::vector<OscillatorSpecies> out;
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = s.omega[k > 0 ? k - 1 : k];
        const double hi = s.omega[k + 1 < n ? k + 1 : k];
        const double weight = 0.5 * (hi - lo) * s.G2[k];
        if (weight <= 0.0 || s.omega[k] == 0.0) continue;
        out.push_back({s.omega[k], std::sqrt(weight)});
    }
    return out;
}

SampledSeries kk_forward(const SampledSeries& chi2, TransformOptions opts) {
    check_series(chi2);
    if (chi2.omega.front() == 0.0 && chi2.value.front() != 0.0)
        throw GridError("chi'' must vanish at omega = 0");

    std::vector<double> x = chi2.omega, f = chi2.value;
    if (x.front() > 0.0) {
        x.insert(x.begin(), 0.0);
        f.insert(f.begin(), 0.0);
    }
    if (x.size() < 4) throw GridError("a KK transform needs at least four grid nodes");
    const CubicPanels panels = cubic_panels(x, f);
    const double b = x.back();
    const double B = f.back() * b * b * b;  // chi'' ~ B / omega^3

    SampledSeries out;
    out.omega = chi2.omega;
    out.value.resize(chi2.omega.size());
    double tail_max = 0.0;
    for (std::size_t i = 0; i < out.omega.size(); ++i) {
        const double W = out.omega[i];
        double v = (cauchy(panels, W) + cauchy(panels, -W)) / pi;
        const double tail = 2.0 * B / pi * tail_kernel(b, W);
        tail_max = std::max(tail_max, std::abs(tail));
        if (opts.tail_correction) v += tail;
        out.value[i] = v;
    }
    out.truncation_estimate = tail_max;
    out.truncated_spectrum_warning = std::abs(chi2.value.back()) > kWarnFraction * max_abs(chi2.value);
    return out;
}

SampledSeries kk_inverse(const SampledSeries& chi1, TransformOptions opts) {
    check_series(chi1);
    std::vector<double> x = chi1.omega, f = chi1.value;
    if (x.front() > 0.0) {
        x.insert(x.begin(), 0.0);
        f.insert(f.begin(), f.front());
    }
    if (x.size() < 4) throw GridError("a KK transform needs at least four grid nodes");
    const CubicPanels panels = cubic_panels(x, f);
    const double b = x.back();
    const double A = f.back() * b * b;  // chi' ~ A / omega^2

    SampledSeries out;
    out.omega = chi1.omega;
    out.value.resize(chi1.omega.size());
    double tail_max = 0.0;
    for (std::size_t i = 0; i < out.omega.size(); ++i) {
        const double W = out.omega[i];
        if (W == 0.0) {
            out.value[i] = 0.0;
            continue;
        }
        double v = -(cauchy(panels, W) - cauchy(panels, -W)) / pi;
        const double tail = -2.0 * W * A / pi * tail_kernel(b, W);
        tail_max = std::max(tail_max, std::abs(tail));
        if (opts.tail_correction) v += tail;
        out.value[i] = v;
    }
    out.truncation_estimate = tail_max;
    out.truncated_spectrum_warning = std::abs(chi1.value.back()) > kWarnFraction * max_abs(chi1.value);
    return out;
}

SampledSeries read_series(std::istream& in) {
    SampledSeries s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double w = 0.0, v = 0.0;
        if (!(row >> w)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("line " + std::to_string(lineno) + ": expected two numbers");
        }
        std::string rest;
        if (!(row >> v) || (row >> rest))
            throw ParseError("line " + std::to_string(lineno) + ": expected two numbers");
        s.omega.push_back(w);
        s.value.push_back(v);
    }
    check_series(s);
    return s;
}

SampledSeries read_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), "kk.input");
    return read_series(in);
}

void write_series(std::ostream& out, const SampledSeries& series,
                  const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << '\n';
    char buf[64];
    for (std::size_t i = 0; i < series.omega.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g %.12g\n", series.omega[i], series.value[i]);
        out << buf;
    }
}

}  // namespace polsp::kk
