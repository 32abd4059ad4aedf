#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace polsp::detail {

struct Interval {
    double lo;
    double hi;
};

/// Splits (lo, hi] at `singular` points, removing +/- exclusion around each.
inline std::vector<Interval> pole_free_intervals(double lo, double hi, std::vector<double> singular,
                                                 double exclusion) {
    std::sort(singular.begin(), singular.end());
    std::vector<Interval> out;
    double start = lo;
    for (double p : singular) {
        if (p - exclusion <= start) {
            start = std::max(start, p + exclusion);
            continue;
        }
        if (p - exclusion >= hi) break;
        out.push_back({start, p - exclusion});
        start = p + exclusion;
    }
    if (start < hi) out.push_back({start, hi});
    return out;
}

/// `points` samples spanning [lo, hi] inclusive.
inline std::vector<double> scan_grid(Interval iv, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = (i == points - 1) ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (points - 1);
    return g;
}

inline bool converged(double a, double b, double rel_tol) {
    const double mid = 0.5 * (a + b);
    return (b - a) <= rel_tol * std::abs(mid) || mid <= a || mid >= b;
}

/// Bisection on a sign change of f between a and b (f(a) has sign `sign_a`).
inline double bisect_sign(const std::function<double(double)>& f, double a, double b, double sign_a,
                          double rel_tol) {
    while (!converged(a, b, rel_tol)) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (sign_a > 0.0))
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

/// Smallest x in (a, b] with count(x) <= target, for a count that is
/// non-increasing in x.
inline double bisect_count(const std::function<int(double)>& count, double a, double b, int target,
                           double rel_tol) {
    while (!converged(a, b, rel_tol)) {
        const double mid = 0.5 * (a + b);
        if (count(mid) <= target)
            b = mid;
        else
            a = mid;
    }
    return 0.5 * (a + b);
}

/// cos-like and sin(Qx)/Q-like solutions of y'' + Q^2 y = 0 for any real Q^2
/// (trigonometric for Q^2 > 0, hyperbolic for Q^2 < 0). Both are real and
/// satisfy C' = -Q^2 S, S' = C, C(0) = 1, S(0) = 0.
struct Fundamental {
    double q2;

    double C(double x) const {
        const double t = q2 * x * x;
        if (std::abs(t) < 1e-8) return 1.0 - 0.5 * t + t * t / 24.0;
        if (q2 > 0.0) return std::cos(std::sqrt(q2) * x);
        return std::cosh(std::sqrt(-q2) * x);
    }

    double S(double x) const {
        const double t = q2 * x * x;
        if (std::abs(t) < 1e-8) return x * (1.0 - t / 6.0 + t * t / 120.0);
        if (q2 > 0.0) {
            const double Q = std::sqrt(q2);
            return std::sin(Q * x) / Q;
        }
        const double k = std::sqrt(-q2);
        return std::sinh(k * x) / k;
    }
};

}  // namespace polsp::detail
