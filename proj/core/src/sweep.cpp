#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"
#include "polsp/hopfield.hpp"

namespace polsp::dispersion {

std::vector<double> roots_at(const ValidatedConfig& config, Method method, TransverseWavenumber q,
                             FrequencyWindow window) {
    switch (method) {
        case Method::dynamical:
            return hopfield::spectrum(config, q);
        case Method::secular:
            return secular_roots(config, modes::overlap_K(config), q, window);
        case Method::green:
            return green_roots(config, q, window);
        case Method::one_exciton:
            return one_exciton_roots(config, modes::overlap_K(config), q, window);
        case Method::two_exciton:
            return two_exciton_roots(config, modes::overlap_K(config), q, window);
        case Method::classical:
            return classical_roots(config, kk::LorentzSet{config->oscillators}, q, window).merged();
    }
    throw SettingsError("unknown method", "solver.method");
}

namespace {

bool index_link(std::vector<std::vector<BranchSample>>& branches, std::vector<int>& open,
                double q, const std::vector<double>& roots, double reach) {
    if (open.size() != roots.size()) return false;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (std::abs(roots[i] - branches[open[i]].back().Omega) > reach) return false;
    for (std::size_t i = 0; i < roots.size(); ++i) branches[open[i]].push_back({q, roots[i]});
    return true;
}

void greedy_link(std::vector<std::vector<BranchSample>>& branches, std::vector<int>& open, double q,
                 const std::vector<double>& roots, double reach) {
    std::vector<int> claimed_by(branches.size(), -1);
    std::vector<int> target(roots.size(), -1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int b : open) {
            const double d = std::abs(roots[i] - branches[b].back().Omega);
            if (d <= reach && d < best) {
                best = d;
                target[i] = b;
            }
        }
        if (target[i] < 0) continue;
        if (claimed_by[target[i]] >= 0)
            throw BranchMatchError("roots " + std::to_string(roots[claimed_by[target[i]]]) + " and " +
                                   std::to_string(roots[i]) + " at q=" + std::to_string(q) +
                                   " both continue the branch at " +
                                   std::to_string(branches[target[i]].back().Omega));
        claimed_by[target[i]] = static_cast<int>(i);
    }
    std::vector<int> next;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (target[i] >= 0) {
            branches[target[i]].push_back({q, roots[i]});
            next.push_back(target[i]);
        } else {
            branches.push_back({{q, roots[i]}});
            next.push_back(static_cast<int>(branches.size()) - 1);
        }
    }
    open = std::move(next);
}

}  // namespace

std::vector<std::vector<BranchSample>> link_branches(
    const std::vector<double>& q_grid, const std::vector<std::vector<double>>& roots,
    double slope_cap, double tol) {
    if (q_grid.size() != roots.size())
        throw DimensionError("link_branches: q grid and root lists differ in length");
    std::vector<std::vector<BranchSample>> branches;
    std::vector<int> open;
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        if (i > 0 && !(q_grid[i] > q_grid[i - 1]))
            throw GridError("q grid must be strictly ascending");
        std::vector<double> r = roots[i];
        std::sort(r.begin(), r.end());
        if (i == 0) {
            for (double w : r) {
                branches.push_back({{q_grid[0], w}});
                open.push_back(static_cast<int>(branches.size()) - 1);
            }
            continue;
        }
        const double reach = slope_cap * (q_grid[i] - q_grid[i - 1]) + tol;
        if (!index_link(branches, open, q_grid[i], r, reach)) greedy_link(branches, open, q_grid[i], r, reach);
    }
    return branches;
}

DispersionCurve sweep(const ValidatedConfig& config, const std::vector<double>& q_grid, int threads) {
    if (q_grid.empty()) throw GridError("empty q grid");
    const auto method = config->solver.method;
    std::vector<std::vector<double>> roots(q_grid.size());
    std::vector<std::exception_ptr> errors(q_grid.size());

    const auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < q_grid.size(); i += stride) {
            try {
                const TransverseWavenumber q{q_grid[i]};
                roots[i] = roots_at(config, method, q, default_window(config, q));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, q_grid.size());
    if (n == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work, t, n);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    double top = 0.0;
    for (const auto& r : roots)
        for (double w : r) top = std::max(top, w);
    const double tol = std::max(config->solver.pole_exclusion, 1e3 * config->solver.root_tol * top);

    DispersionCurve curve;
    curve.method = method;
    curve.photon_modes = config->photon_modes;
    curve.exciton_modes = config->exciton_modes;
    curve.species = config.species_count();
    curve.branches = link_branches(q_grid, roots, slope_cap(config), tol);
    return curve;
}

}  // namespace polsp::dispersion
