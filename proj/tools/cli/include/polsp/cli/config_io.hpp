#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "polsp/model.hpp"

namespace polsp::cli {

struct SweepSettings {
    double q_min = 0.0;
    double q_max = 0.0;
    int points = 1;

    /// Evenly spaced grid from q_min to q_max inclusive.
    std::vector<double> grid() const;
};

struct KkSettings {
    std::string input;                  // two-column file
    std::string direction = "forward";  // forward: chi'' -> chi', inverse: chi' -> chi''
    bool tail_correction = true;
};

struct ConvergeSettings {
    std::vector<int> photon_modes{512};
    std::vector<int> exciton_modes{4, 8, 16, 32, 64};
    int roots = 5;
};

/// Everything a run needs besides the command line.
struct RunConfig {
    CavityConfig cavity;
    SweepSettings sweep;
    KkSettings kk;
    bool has_kk = false;
    ConvergeSettings converge;
};

/// Strict parse of the JSON document. Unknown keys and wrong types raise
/// ParseError naming the field path. A run manifest is accepted too: its
/// "config" member is parsed in place of the whole document.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

/// Reads, parses and validates. Validation errors keep their field path.
/// A relative kk.input is resolved against the config file's directory and
/// stored as an absolute path.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form with every default filled in. Parsing it back gives
/// the same RunConfig.
nlohmann::json to_json(const RunConfig& config);

}  // namespace polsp::cli
