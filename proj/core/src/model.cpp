#include "polsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polsp/errors.hpp"

namespace polsp {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::dynamical: return "dynamical";
        case Method::secular: return "secular";
        case Method::green: return "green";
        case Method::one_exciton: return "one_exciton";
        case Method::two_exciton: return "two_exciton";
        case Method::classical: return "classical";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    for (Method m : {Method::dynamical, Method::secular, Method::green, Method::one_exciton,
                     Method::two_exciton, Method::classical}) {
        if (to_string(m) == name) return m;
    }
    throw SettingsError("unknown method '" + std::string(name) + "'", "solver.method");
}

TransverseWavenumber::TransverseWavenumber(double q) : q_(q) {
    if (!std::isfinite(q) || q < 0.0)
        throw GeometryError("transverse wavenumber must be finite and >= 0", "q");
}

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ValidatedConfig validate(const CavityConfig& config) {
    if (!positive(config.L)) throw GeometryError("cavity length L must be > 0", "geometry.L");
    if (!positive(config.l)) throw GeometryError("slab thickness l must be > 0", "geometry.l");
    if (config.l > config.L)
        throw GeometryError("slab thickness l must not exceed cavity length L", "geometry.l");
    if (!positive(config.c)) throw GeometryError("light speed c must be > 0", "geometry.c");

    if (config.oscillators.empty())
        throw SpeciesError("at least one oscillator species is required", "oscillators");
    for (std::size_t j = 0; j < config.oscillators.size(); ++j) {
        const auto& s = config.oscillators[j];
        const std::string path = "oscillators[" + std::to_string(j) + "]";
        if (!positive(s.omega)) throw SpeciesError("oscillator frequency must be > 0", path + ".omega");
        if (!std::isfinite(s.G) || s.G < 0.0)
            throw SpeciesError("oscillator coupling must be >= 0", path + ".G");
    }

    if (config.photon_modes < 1)
        throw TruncationError("photon mode count must be >= 1", "basis.photon_modes");
    if (config.exciton_modes < 1)
        throw TruncationError("exciton mode count must be >= 1", "basis.exciton_modes");

    const auto& s = config.solver;
    if (!positive(s.root_tol)) throw SettingsError("root_tol must be > 0", "solver.root_tol");
    if (!positive(s.pole_exclusion))
        throw SettingsError("pole_exclusion must be > 0", "solver.pole_exclusion");
    if (s.scan_points < 2) throw SettingsError("scan_points must be >= 2", "solver.scan_points");
    if (s.omega_max && !positive(*s.omega_max))
        throw SettingsError("omega_max must be > 0", "solver.omega_max");
    if (s.slope_cap && !positive(*s.slope_cap))
        throw SettingsError("slope_cap must be > 0", "solver.slope_cap");

    return ValidatedConfig(config);
}

ValidatedConfig with_truncation(const ValidatedConfig& config, int photon_modes, int exciton_modes) {
    CavityConfig copy = config.get();
    copy.photon_modes = photon_modes;
    copy.exciton_modes = exciton_modes;
    return validate(copy);
}

double search_ceiling(const ValidatedConfig& config, TransverseWavenumber q) {
    const auto& cfg = config.get();
    if (cfg.solver.omega_max) return *cfg.solver.omega_max;
    const double qn = std::numbers::pi * cfg.photon_modes / cfg.L;
    double top = cfg.c * std::hypot(qn, q.value());
    double g2 = 0.0;
    for (const auto& s : cfg.oscillators) {
        top = std::max(top, s.omega);
        g2 += s.G * s.G;
    }
    return 1.5 * top + std::sqrt(g2);
}

double slope_cap(const ValidatedConfig& config) {
    return config->solver.slope_cap.value_or(config->c);
}

}  // namespace polsp
