#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "polsp/model.hpp"

namespace polsp::kk {

/// Finite set of lossless oscillators: chi'(Omega) = sum_j G_j^2 / (omega_j^2 - Omega^2).
struct LorentzSet {
    std::vector<OscillatorSpecies> species;
};

/// Oscillator strength density G^2(omega) sampled on an ascending grid,
/// piecewise linear between nodes and zero outside the grid.
struct SampledStrength {
    std::vector<double> omega;
    std::vector<double> G2;
};

using SusceptibilityModel = std::variant<LorentzSet, SampledStrength>;

/// Throws GridError unless the grid is strictly ascending, non-negative,
/// at least two points, and G2 >= 0.
void check(const SampledStrength& s);

/// Real part chi'(Omega). Lorentz sets use the closed form (PoleError at a
/// resonance); sampled densities use the principal value with singularity
/// subtraction and the analytic PV of the rational kernel.
double chi_prime(const SusceptibilityModel& model, double Omega);

/// Absorptive part of a sampled density, chi''(Omega) = pi G^2(Omega) / (2 Omega).
/// Lossless Lorentz sets have a distributional chi'' and are not sampled.
double chi_double_prime(const SampledStrength& s, double Omega);

/// Resonance frequencies of a Lorentz set (empty for sampled models).
std::vector<double> resonances(const SusceptibilityModel& model);

/// Quadrature-node mapping of a sampled density onto discrete species:
/// omega_j = grid node, G_j^2 = trapezoid weight * G^2(omega_j). Nodes with
/// zero weight or omega = 0 are dropped.
std::vector<OscillatorSpecies> discretize(const SampledStrength& s);

/// Values on an ascending frequency grid. Transform outputs carry an
/// estimate of the finite-support truncation error and a warning flag.
struct SampledSeries {
    std::vector<double> omega;
    std::vector<double> value;
    double truncation_estimate = 0.0;
    bool truncated_spectrum_warning = false;
};

struct TransformOptions {
    /// Extend the samples past the top node with the asymptotic tail
    /// (chi' ~ 1/omega^2, chi'' ~ 1/omega^3) instead of cutting them off.
    bool tail_correction = true;
};

/// chi'(Omega) = (2/pi) PV int_0^inf omega chi''(omega) / (omega^2 - Omega^2) d omega.
SampledSeries kk_forward(const SampledSeries& chi_double_prime, TransformOptions opts = {});

/// chi''(Omega) = -(2 Omega / pi) PV int_0^inf chi'(omega) / (omega^2 - Omega^2) d omega.
SampledSeries kk_inverse(const SampledSeries& chi_prime, TransformOptions opts = {});

/// Two-column text: "omega value" per line, '#' starts a comment.
/// Throws ParseError on malformed lines, GridError on a bad grid.
SampledSeries read_series(std::istream& in);
SampledSeries read_series(const std::filesystem::path& path);
void write_series(std::ostream& out, const SampledSeries& series,
                  const std::vector<std::string>& header_comments = {});

}  // namespace polsp::kk
