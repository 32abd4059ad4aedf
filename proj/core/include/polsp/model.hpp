#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polsp {

/// One species of lossless matter oscillators: resonance `omega` and
/// effective light-matter coupling `G` (both in rad/time).
struct OscillatorSpecies {
    double omega = 0.0;
    double G = 0.0;

    bool operator==(const OscillatorSpecies&) const = default;
};

enum class Method { dynamical, secular, green, one_exciton, two_exciton, classical };

std::string_view to_string(Method m);
/// Throws SettingsError on an unknown name.
Method method_from_string(std::string_view name);

struct SolverSettings {
    Method method = Method::dynamical;
    double root_tol = 1e-13;        // relative
    double pole_exclusion = 1e-9;   // rad/time, half-width
    int scan_points = 64;           // samples per pole-free subinterval
    std::optional<double> omega_max;  // auto when unset, see search_ceiling()
    std::optional<double> slope_cap;  // branch slope cap; defaults to c
    bool evanescent = false;        // allow q > Omega/c in green/classical

    bool operator==(const SolverSettings&) const = default;
};

/// Closed planar cavity [-L/2, L/2] with perfect mirrors and a dispersive
/// slab |z| <= l/2, s-polarization, hbar = 1.
struct CavityConfig {
    double L = 1.0;
    double l = 0.5;
    double c = 1.0;
    std::vector<OscillatorSpecies> oscillators;
    int photon_modes = 8;   // N
    int exciton_modes = 2;  // Xi, per species
    SolverSettings solver;

    bool operator==(const CavityConfig&) const = default;
};

/// In-plane wavenumber magnitude |q|.
class TransverseWavenumber {
public:
    TransverseWavenumber() = default;
    /// Throws GeometryError when q < 0 or not finite.
    explicit TransverseWavenumber(double q);

    double value() const noexcept { return q_; }

private:
    double q_ = 0.0;
};

/// A CavityConfig that has passed validate(). Solvers only accept this type,
/// so an unvalidated config cannot reach them.
class ValidatedConfig {
public:
    const CavityConfig& get() const noexcept { return cfg_; }
    const CavityConfig* operator->() const noexcept { return &cfg_; }

    int species_count() const noexcept { return static_cast<int>(cfg_.oscillators.size()); }
    /// N + S * Xi: number of positive polariton frequencies.
    int mode_count() const noexcept {
        return cfg_.photon_modes + species_count() * cfg_.exciton_modes;
    }

    bool operator==(const ValidatedConfig&) const = default;

private:
    friend ValidatedConfig validate(const CavityConfig& config);
    explicit ValidatedConfig(CavityConfig cfg) : cfg_(std::move(cfg)) {}

    CavityConfig cfg_;
};

/// Checks every invariant of the data model. Throws GeometryError,
/// SpeciesError, TruncationError or SettingsError.
ValidatedConfig validate(const CavityConfig& config);
inline ValidatedConfig validate(const ValidatedConfig& config) { return config; }

/// Copy of `config` with new truncation counts, revalidated.
ValidatedConfig with_truncation(const ValidatedConfig& config, int photon_modes, int exciton_modes);

/// Upper end of root searches at wavenumber q: solver.omega_max if set,
/// otherwise 1.5 * max(Omega_N(q), omega_j) + sqrt(sum G_j^2).
double search_ceiling(const ValidatedConfig& config, TransverseWavenumber q);

/// Slope cap for branch matching (solver.slope_cap or c).
double slope_cap(const ValidatedConfig& config);

}  // namespace polsp
