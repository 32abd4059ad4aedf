#pragma once

#include <stdexcept>
#include <string>

namespace polsp {

/// Base of every error raised by the solvers. `kind()` is the stable
/// machine-readable name used in CLI error records.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Configuration problems (bad geometry, species, truncation, parse).
class ConfigError : public Error {
public:
    ConfigError(std::string kind, const std::string& what, std::string field = {})
        : Error(std::move(kind), what), field_(std::move(field)) {}

    /// Dotted path of the offending field, when known (e.g. "geometry.l").
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class GeometryError : public ConfigError {
public:
    explicit GeometryError(const std::string& what, std::string field = {})
        : ConfigError("GeometryError", what, std::move(field)) {}
};

class SpeciesError : public ConfigError {
public:
    explicit SpeciesError(const std::string& what, std::string field = {})
        : ConfigError("SpeciesError", what, std::move(field)) {}
};

class TruncationError : public ConfigError {
public:
    explicit TruncationError(const std::string& what, std::string field = {})
        : ConfigError("TruncationError", what, std::move(field)) {}
};

class SettingsError : public ConfigError {
public:
    explicit SettingsError(const std::string& what, std::string field = {})
        : ConfigError("SettingsError", what, std::move(field)) {}
};

class ParseError : public ConfigError {
public:
    explicit ParseError(const std::string& what, std::string field = {})
        : ConfigError("ParseError", what, std::move(field)) {}
};

/// Numerical or contract failures inside a solver.
class SolverError : public Error {
public:
    using Error::Error;
};

#define POLSP_SOLVER_ERROR(Name)                                              \
    class Name : public SolverError {                                         \
    public:                                                                   \
        explicit Name(const std::string& what) : SolverError(#Name, what) {}  \
    }

POLSP_SOLVER_ERROR(IndexError);
POLSP_SOLVER_ERROR(DimensionError);
POLSP_SOLVER_ERROR(NormalizationError);
POLSP_SOLVER_ERROR(ConvergenceError);
POLSP_SOLVER_ERROR(BracketError);
POLSP_SOLVER_ERROR(EvanescentError);
POLSP_SOLVER_ERROR(QuadratureError);
POLSP_SOLVER_ERROR(BranchMatchError);
POLSP_SOLVER_ERROR(PoleError);
POLSP_SOLVER_ERROR(GridError);

#undef POLSP_SOLVER_ERROR

}  // namespace polsp
