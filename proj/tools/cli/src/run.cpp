#include "polsp/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>

#include <openssl/evp.h>

#include "polsp/dispersion.hpp"
#include "polsp/errors.hpp"
#include "polsp/hopfield.hpp"
#include "polsp/kk.hpp"

#ifndef POLSP_VERSION
#define POLSP_VERSION "0.0.0"
#endif

namespace polsp::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError("cannot read " + p.string(), "kk.input");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Output {
    std::string name;
    std::string body;
};

std::string header(const std::string& digest, Command cmd, const std::vector<std::string>& extra) {
    std::string h = "# polsp " + tool_version() + " " + to_string(cmd) + "\n# manifest " + digest + "\n";
    for (const auto& e : extra) h += "# " + e + "\n";
    return h;
}

std::string sweep_csv(const dispersion::DispersionCurve& curve) {
    std::string s = "q,branch,omega\n";
    for (std::size_t b = 0; b < curve.branches.size(); ++b)
        for (const auto& p : curve.branches[b]) s += num(p.q) + "," + std::to_string(b) + "," + num(p.Omega) + "\n";
    return s;
}

std::string spectrum_csv(const std::vector<hopfield::PolaritonMode>& modes) {
    std::string s = "mode,omega,W_norm2,X_norm2,Y_norm2,Z_norm2,symplectic_norm\n";
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto& m = modes[i];
        s += std::to_string(i) + "," + num(m.Omega) + "," + num(m.W.squaredNorm()) + "," +
             num(m.X.squaredNorm()) + "," + num(m.Y.squaredNorm()) + "," + num(m.Z.squaredNorm()) + "," +
             num(m.symplectic_norm()) + "\n";
    }
    return s;
}

std::string classical_csv(const dispersion::ClassicalRoots& roots) {
    std::vector<std::pair<double, int>> all;
    for (double w : roots.symmetric) all.push_back({w, 1});
    for (double w : roots.antisymmetric) all.push_back({w, 2});
    std::sort(all.begin(), all.end());
    std::string s = "omega,branch\n";
    for (const auto& [w, b] : all) s += num(w) + "," + std::to_string(b) + "\n";
    return s;
}

struct ConvergeRow {
    int photon_modes;
    int exciton_modes;
    int roots;
    double deviation;
};

std::vector<ConvergeRow> converge_table(const RunConfig& rc, TransverseWavenumber q) {
    const auto& cs = rc.converge;
    const int k = cs.roots;
    const int n_ref = *std::max_element(cs.photon_modes.begin(), cs.photon_modes.end());
    const int x_ref = *std::max_element(cs.exciton_modes.begin(), cs.exciton_modes.end());
    const auto base = validate(rc.cavity);

    // Only the lowest k + 1 roots matter: grow the window from twice the
    // (k+1)-th empty-cavity frequency until they are found.
    const auto secular = [&](int n, int x) {
        const auto cfg = with_truncation(base, n, x);
        const auto overlaps = modes::overlap_K(cfg);
        const double ceiling = search_ceiling(cfg, q);
        double hi = std::min(ceiling, 2.0 * cfg->c * std::hypot(std::numbers::pi * (k + 1) / cfg->L, q.value()));
        for (;;) {
            auto r = dispersion::secular_roots(cfg, overlaps, q, {0.0, hi});
            if (static_cast<int>(r.size()) > k || hi >= ceiling) return r;
            hi = std::min(ceiling, 2.0 * hi);
        }
    };

    // The classical search stops between root k and root k+1 of the most
    // complete secular run, short of the root accumulation at resonances.
    const auto ref = secular(n_ref, x_ref);
    if (static_cast<int>(ref.size()) < k)
        throw ConvergenceError("secular method found " + std::to_string(ref.size()) + " roots, need " +
                               std::to_string(k));
    const double hi = static_cast<int>(ref.size()) > k ? 0.5 * (ref[k - 1] + ref[k]) : 1.05 * ref[k - 1];
    const auto classical =
        dispersion::classical_roots(base, kk::LorentzSet{base->oscillators}, q, {0.0, hi}).merged();
    if (static_cast<int>(classical.size()) < k)
        throw ConvergenceError("classical relation has " + std::to_string(classical.size()) +
                               " roots below " + num(hi) + ", need " + std::to_string(k));

    std::vector<ConvergeRow> rows;
    for (int n : cs.photon_modes) {
        for (int x : cs.exciton_modes) {
            const auto r = (n == n_ref && x == x_ref) ? ref : secular(n, x);
            if (static_cast<int>(r.size()) < k)
                throw ConvergenceError("secular method at N=" + std::to_string(n) + ", Xi=" +
                                       std::to_string(x) + " found fewer than " + std::to_string(k) +
                                       " roots");
            double dev = 0.0;
            for (int i = 0; i < k; ++i) dev = std::max(dev, std::abs(r[i] - classical[i]) / classical[i]);
            rows.push_back({n, x, k, dev});
        }
    }
    return rows;
}

}  // namespace

Command command_from_string(const std::string& name) {
    for (Command c : {Command::sweep, Command::spectrum, Command::classical, Command::kk, Command::converge})
        if (to_string(c) == name) return c;
    throw ParseError("unknown command '" + name + "'", "command");
}

std::string to_string(Command c) {
    switch (c) {
        case Command::sweep: return "sweep";
        case Command::spectrum: return "spectrum";
        case Command::classical: return "classical";
        case Command::kk: return "kk";
        case Command::converge: return "converge";
    }
    return "unknown";
}

std::string tool_version() { return POLSP_VERSION; }

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

RunResult run(const RunConfig& input, const RunOptions& opts) {
    RunConfig rc = input;
    if (opts.method) rc.cavity.solver.method = *opts.method;
    const auto config = validate(rc.cavity);
    const double q0 = rc.sweep.q_min;

    std::string method;
    std::vector<double> q_grid;
    switch (opts.command) {
        case Command::sweep:
            method = std::string(polsp::to_string(rc.cavity.solver.method));
            q_grid = rc.sweep.grid();
            break;
        case Command::spectrum: method = "dynamical"; q_grid = {q0}; break;
        case Command::classical: method = "classical"; q_grid = {q0}; break;
        case Command::converge: method = "secular"; q_grid = {q0}; break;
        case Command::kk: method = "kk"; break;
    }

    json det = {{"tool_version", tool_version()},
                {"command", to_string(opts.command)},
                {"method", method},
                {"config", to_json(rc)},
                {"q_grid", q_grid},
                {"truncation",
                 {{"photon_modes", config->photon_modes},
                  {"exciton_modes", config->exciton_modes},
                  {"species", config.species_count()}}}};

    std::string kk_input;
    if (opts.command == Command::kk) {
        if (!rc.has_kk) throw ParseError("the kk command needs a kk section", "kk");
        kk_input = read_file(rc.kk.input);
        det["kk_input_sha256"] = sha256_hex(kk_input);
    }
    const std::string digest = sha256_hex(det.dump());

    RunResult result;
    std::vector<Output> outputs;
    switch (opts.command) {
        case Command::sweep: {
            const auto curve = dispersion::sweep(config, q_grid, opts.threads);
            outputs.push_back({"sweep.csv", header(digest, opts.command, {"method " + method}) + sweep_csv(curve)});
            break;
        }
        case Command::spectrum: {
            const TransverseWavenumber q{q0};
            const auto modes = hopfield::diagonalize(
                hopfield::build_dynamical_matrix(config, modes::overlap_K(config), q));
            outputs.push_back({"spectrum.csv", header(digest, opts.command, {"q " + num(q0)}) + spectrum_csv(modes)});
            break;
        }
        case Command::classical: {
            const TransverseWavenumber q{q0};
            const auto roots = dispersion::classical_roots(config, kk::LorentzSet{config->oscillators}, q,
                                                           dispersion::default_window(config, q));
            outputs.push_back({"classical.csv",
                               header(digest, opts.command, {"q " + num(q0), "branch 1 symmetric, branch 2 antisymmetric"}) +
                                   classical_csv(roots)});
            break;
        }
        case Command::converge: {
            std::string body = "photon_modes,exciton_modes,roots,max_rel_deviation\n";
            for (const auto& r : converge_table(rc, TransverseWavenumber{q0}))
                body += std::to_string(r.photon_modes) + "," + std::to_string(r.exciton_modes) + "," +
                        std::to_string(r.roots) + "," + num(r.deviation) + "\n";
            outputs.push_back({"converge.csv", header(digest, opts.command, {"q " + num(q0)}) + body});
            break;
        }
        case Command::kk: {
            std::istringstream in(kk_input);
            const auto series = kk::read_series(in);
            const kk::TransformOptions to{rc.kk.tail_correction};
            const bool forward = rc.kk.direction == "forward";
            const auto out = forward ? kk::kk_forward(series, to) : kk::kk_inverse(series, to);
            std::ostringstream body;
            kk::write_series(body, out,
                             {"polsp " + tool_version() + " kk", "manifest " + digest,
                              std::string("direction ") + (forward ? "forward" : "inverse"),
                              std::string("tail_correction ") + (rc.kk.tail_correction ? "true" : "false"),
                              "truncation_estimate " + num(out.truncation_estimate),
                              std::string("truncated_spectrum_warning ") +
                                  (out.truncated_spectrum_warning ? "true" : "false")});
            if (out.truncated_spectrum_warning)
                result.warnings.push_back(
                    "TruncatedSpectrumWarning: input does not decay at the grid edge; transformed values "
                    "carry edge artifacts (estimate " + num(out.truncation_estimate) + ")");
            outputs.push_back({forward ? "kk_forward.dat" : "kk_inverse.dat", body.str()});
            break;
        }
    }

    std::filesystem::create_directories(opts.out_dir);
    json digests = json::object();
    for (const auto& o : outputs) {
        const auto path = opts.out_dir / o.name;
        std::ofstream f(path, std::ios::binary);
        f << o.body;
        if (!f) throw std::runtime_error("cannot write " + path.string());
        digests[o.name] = sha256_hex(o.body);
        result.files.push_back(path);
    }

    json manifest = det;
    manifest["manifest_version"] = 1;
    manifest["manifest_digest"] = digest;
    manifest["created_utc"] = utc_now();
    manifest["threads"] = opts.threads;
    manifest["outputs"] = digests;
    manifest["warnings"] = result.warnings;
    const auto mpath = opts.out_dir / "manifest.json";
    std::ofstream mf(mpath);
    mf << manifest.dump(2) << "\n";
    if (!mf) throw std::runtime_error("cannot write " + mpath.string());
    result.files.push_back(mpath);
    result.manifest = std::move(manifest);
    return result;
}

}  // namespace polsp::cli
