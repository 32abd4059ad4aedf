#include "polsp/cli/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "polsp/errors.hpp"

namespace polsp::cli {

using nlohmann::json;

namespace {

// Typed access to one JSON object; every key must be claimed before finish().
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ParseError("expected an object", path_.empty() ? "<root>" : path_);
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_.contains(key);
    }

    const json& at(const std::string& key) {
        seen_.insert(key);
        return obj_.at(key);
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number()) throw ParseError("expected a number", field(key));
        return v.get<double>();
    }

    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number_integer()) throw ParseError("expected an integer", field(key));
        return v.get<int>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) throw ParseError("expected true or false", field(key));
        return v.get<bool>();
    }

    std::string string(const std::string& key, std::string fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_string()) throw ParseError("expected a string", field(key));
        return v.get<std::string>();
    }

    std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (v.is_number_integer()) return {v.get<int>()};
        if (!v.is_array() || v.empty()) throw ParseError("expected an integer or a list of integers", field(key));
        std::vector<int> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer())
                throw ParseError("expected an integer", field(key) + "[" + std::to_string(i) + "]");
            out.push_back(v[i].get<int>());
        }
        return out;
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items())
            if (!seen_.count(key)) throw ParseError("unknown field", field(key));
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

void parse_solver(Section s, SolverSettings& out) {
    if (s.has("method")) {
        try {
            out.method = method_from_string(s.string("method", ""));
        } catch (const SettingsError& e) {
            throw ParseError(e.what(), "solver.method");
        }
    }
    out.root_tol = s.number("root_tol", out.root_tol);
    out.pole_exclusion = s.number("pole_exclusion", out.pole_exclusion);
    out.scan_points = s.integer("scan_points", out.scan_points);
    if (s.has("omega_max")) out.omega_max = s.number("omega_max", 0.0);
    if (s.has("slope_cap")) out.slope_cap = s.number("slope_cap", 0.0);
    out.evanescent = s.boolean("evanescent", out.evanescent);
    s.finish();
}

}  // namespace

std::vector<double> SweepSettings::grid() const {
    if (points < 1) throw ParseError("sweep needs at least one point", "sweep.points");
    std::vector<double> q(points);
    for (int i = 0; i < points; ++i)
        q[i] = (points == 1 || i == 0) ? q_min
               : (i == points - 1)     ? q_max
                                       : q_min + (q_max - q_min) * i / (points - 1);
    return q;
}

RunConfig parse_config(const json& doc) {
    if (doc.is_object() && doc.contains("manifest_version")) {
        if (!doc.contains("config")) throw ParseError("manifest has no config member", "config");
        return parse_config(doc.at("config"));
    }

    RunConfig rc;
    Section root(doc, "");

    if (root.has("geometry")) {
        Section g(root.at("geometry"), "geometry");
        rc.cavity.L = g.number("L", rc.cavity.L);
        rc.cavity.l = g.number("l", rc.cavity.l);
        rc.cavity.c = g.number("c", rc.cavity.c);
        g.finish();
    }

    if (!root.has("oscillators")) throw ParseError("missing required section", "oscillators");
    const json& osc = root.at("oscillators");
    if (!osc.is_array()) throw ParseError("expected a list of {omega, G}", "oscillators");
    for (std::size_t j = 0; j < osc.size(); ++j) {
        Section o(osc[j], "oscillators[" + std::to_string(j) + "]");
        if (!o.has("omega")) throw ParseError("missing required field", o.field("omega"));
        OscillatorSpecies sp;
        sp.omega = o.number("omega", 0.0);
        sp.G = o.number("G", 0.0);
        o.finish();
        rc.cavity.oscillators.push_back(sp);
    }

    if (root.has("basis")) {
        Section b(root.at("basis"), "basis");
        rc.cavity.photon_modes = b.integer("photon_modes", rc.cavity.photon_modes);
        rc.cavity.exciton_modes = b.integer("exciton_modes", rc.cavity.exciton_modes);
        b.finish();
    }

    if (root.has("sweep")) {
        Section s(root.at("sweep"), "sweep");
        rc.sweep.q_min = s.number("q_min", rc.sweep.q_min);
        rc.sweep.q_max = s.number("q_max", rc.sweep.q_min);
        rc.sweep.points = s.integer("points", rc.sweep.points);
        s.finish();
        if (rc.sweep.points < 1) throw ParseError("sweep needs at least one point", "sweep.points");
        if (!(rc.sweep.q_min >= 0.0)) throw GeometryError("q_min must be >= 0", "sweep.q_min");
        if (!(rc.sweep.q_max >= rc.sweep.q_min))
            throw GeometryError("q_max must be >= q_min", "sweep.q_max");
        if (rc.sweep.points > 1 && !(rc.sweep.q_max > rc.sweep.q_min))
            throw GeometryError("q_max must exceed q_min when points > 1", "sweep.q_max");
    }

    if (root.has("solver")) parse_solver(Section(root.at("solver"), "solver"), rc.cavity.solver);

    if (root.has("kk")) {
        Section k(root.at("kk"), "kk");
        rc.has_kk = true;
        if (!k.has("input")) throw ParseError("missing required field", "kk.input");
        rc.kk.input = k.string("input", "");
        rc.kk.direction = k.string("direction", rc.kk.direction);
        if (rc.kk.direction != "forward" && rc.kk.direction != "inverse")
            throw ParseError("direction must be \"forward\" or \"inverse\"", "kk.direction");
        rc.kk.tail_correction = k.boolean("tail_correction", rc.kk.tail_correction);
        k.finish();
    }

    if (root.has("converge")) {
        Section c(root.at("converge"), "converge");
        rc.converge.photon_modes = c.integers("photon_modes", rc.converge.photon_modes);
        rc.converge.exciton_modes = c.integers("exciton_modes", rc.converge.exciton_modes);
        rc.converge.roots = c.integer("roots", rc.converge.roots);
        c.finish();
        for (int n : rc.converge.photon_modes)
            if (n < 1) throw TruncationError("photon mode count must be >= 1", "converge.photon_modes");
        for (int x : rc.converge.exciton_modes)
            if (x < 1) throw TruncationError("exciton mode count must be >= 1", "converge.exciton_modes");
        if (rc.converge.roots < 1) throw SettingsError("roots must be >= 1", "converge.roots");
    }

    root.finish();
    return rc;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig rc = parse_config_text(buf.str());
    if (rc.has_kk && std::filesystem::path(rc.kk.input).is_relative())
        rc.kk.input = std::filesystem::absolute(path.parent_path() / rc.kk.input).lexically_normal().string();
    validate(rc.cavity);
    return rc;
}

json to_json(const RunConfig& rc) {
    const auto& c = rc.cavity;
    json osc = json::array();
    for (const auto& s : c.oscillators) osc.push_back({{"omega", s.omega}, {"G", s.G}});

    json solver = {{"method", std::string(to_string(c.solver.method))},
                   {"root_tol", c.solver.root_tol},
                   {"pole_exclusion", c.solver.pole_exclusion},
                   {"scan_points", c.solver.scan_points},
                   {"evanescent", c.solver.evanescent}};
    if (c.solver.omega_max) solver["omega_max"] = *c.solver.omega_max;
    if (c.solver.slope_cap) solver["slope_cap"] = *c.solver.slope_cap;

    json doc = {
        {"geometry", {{"L", c.L}, {"l", c.l}, {"c", c.c}}},
        {"oscillators", osc},
        {"basis", {{"photon_modes", c.photon_modes}, {"exciton_modes", c.exciton_modes}}},
        {"sweep", {{"q_min", rc.sweep.q_min}, {"q_max", rc.sweep.q_max}, {"points", rc.sweep.points}}},
        {"solver", solver},
        {"converge",
         {{"photon_modes", rc.converge.photon_modes},
          {"exciton_modes", rc.converge.exciton_modes},
          {"roots", rc.converge.roots}}},
    };
    if (rc.has_kk)
        doc["kk"] = {{"input", rc.kk.input},
                     {"direction", rc.kk.direction},
                     {"tail_correction", rc.kk.tail_correction}};
    return doc;
}

}  // namespace polsp::cli
