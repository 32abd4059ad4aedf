#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polsp/cli/config_io.hpp"

namespace polsp::cli {

enum class Command { sweep, spectrum, classical, kk, converge };

/// Throws ParseError for an unknown command name.
Command command_from_string(const std::string& name);
std::string to_string(Command c);

struct RunOptions {
    Command command = Command::sweep;
    std::filesystem::path out_dir = ".";
    std::optional<Method> method;  // overrides solver.method
    int threads = 1;
};

struct RunResult {
    std::vector<std::filesystem::path> files;  // data files, then manifest.json
    nlohmann::json manifest;
    std::vector<std::string> warnings;
};

/// Executes one command and writes its outputs into opts.out_dir. Every data
/// file starts with a comment header carrying the manifest digest, which
/// covers the effective config, command, q grid, truncation and tool
/// version (not the thread count or timestamps).
RunResult run(const RunConfig& config, const RunOptions& opts);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

std::string tool_version();

}  // namespace polsp::cli
