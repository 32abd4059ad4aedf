#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polsp/cli/config_io.hpp"
#include "polsp/cli/run.hpp"
#include "polsp/errors.hpp"

namespace {

int report(const std::string& kind, const std::string& message, const std::string& field, int code) {
    nlohmann::json rec = {{"error", kind}, {"message", message}, {"exit_code", code}};
    if (!field.empty()) rec["field"] = field;
    std::cerr << rec.dump() << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polariton dispersion in a planar cavity with a dispersive slab"};
    app.set_version_flag("--version", polsp::cli::tool_version());

    std::string command, config_path, out_dir = ".", method;
    int threads = 1;
    app.add_option("command", command, "sweep | spectrum | classical | kk | converge")
        ->required()
        ->check(CLI::IsMember({"sweep", "spectrum", "classical", "kk", "converge"}));
    app.add_option("--config", config_path, "JSON config or a manifest.json from a previous run")
        ->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--method", method, "override solver.method");
    app.add_option("--threads", threads, "worker threads for sweep")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return report("UsageError", e.what(), "", 2);
    }

    try {
        polsp::cli::RunOptions opts;
        opts.command = polsp::cli::command_from_string(command);
        opts.out_dir = out_dir;
        opts.threads = threads;
        if (!method.empty()) {
            try {
                opts.method = polsp::method_from_string(method);
            } catch (const polsp::SettingsError& e) {
                throw polsp::SettingsError(e.what(), "--method");
            }
        }
        const auto config = polsp::cli::load_config(config_path);
        const auto result = polsp::cli::run(config, opts);
        for (const auto& w : result.warnings)
            std::cerr << nlohmann::json{{"warning", w.substr(0, w.find(':'))}, {"message", w}}.dump() << std::endl;
        for (const auto& f : result.files) std::cout << f.string() << "\n";
        return 0;
    } catch (const polsp::ConfigError& e) {
        return report(e.kind(), e.what(), e.field(), 2);
    } catch (const polsp::SolverError& e) {
        return report(e.kind(), e.what(), "", 3);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), "", 3);
    }
}
