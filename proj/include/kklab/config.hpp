#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kklab/errors.hpp"
#include "kklab/flux_law.hpp"
#include "kklab/grid.hpp"
#include "kklab/scenario.hpp"

namespace kklab {

enum class representation { invariant, conservative };

inline std::string to_string(representation r) {
    return r == representation::invariant ? "invariant" : "conservative";
}

/// Complete description of one run. Parsed from `key = value` text files;
/// every field has a documented default.
struct sim_config {
    std::string law_name = "thin_film";
    double epsilon = 0.1;
    double k = 1.0;
    double p = 1.0;
    double m = 0.5;
    double M = 4.0;
    grid1d grid{-5.0, 5.0, 400};
    double t_end = 1.0;
    double cfl_adv = 0.45;
    double cfl_diff = 0.4;
    representation rep = representation::invariant;
    int cadence = 10; ///< snapshot every this many steps
    /// auto: periodic for smooth/constant scenarios, outflow for jump data.
    std::string boundary = "auto";
    scenario scn;

    any_law law() const { return law_by_name(law_name); }

    boundary_kind resolved_boundary() const {
        if (boundary == "periodic") return boundary_kind::periodic;
        if (boundary == "outflow") return boundary_kind::outflow;
        return scn.wants_periodic() ? boundary_kind::periodic : boundary_kind::outflow;
    }

    void validate() const {
        if (!(epsilon >= 0.0)) throw validation_error("epsilon must be >= 0");
        if (!(t_end >= 0.0)) throw validation_error("t_end must be >= 0");
        if (!(m > 0.0)) throw validation_error("m must be positive");
        if (!(M > m)) throw validation_error("M must exceed m");
        if (!(k > 0.0)) throw validation_error("k must be positive");
        if (!(p >= 0.5)) throw validation_error("p must be >= 0.5");
        if (!(cfl_adv > 0.0 && cfl_adv <= 1.0)) throw validation_error("cfl_adv must lie in (0, 1]");
        if (!(cfl_diff > 0.0 && cfl_diff <= 1.0))
            throw validation_error("cfl_diff must lie in (0, 1]");
        if (cadence < 1) throw validation_error("cadence must be >= 1");
        if (boundary != "auto" && boundary != "periodic" && boundary != "outflow")
            throw validation_error("boundary must be auto, periodic, or outflow");
        law(); // resolves, throws on unknown name
        scn.validate(law(), m, M, t_end, resolved_boundary(), grid);
    }

    /// The full key/value view, used for meta echo and documentation.
    std::map<std::string, std::string> echo() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_number(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing text");
        return x;
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line) + ": key '" + key +
                          "' expects a number, got '" + value + "'");
    }
}

inline std::vector<double> parse_number_list(const std::string& value, const std::string& key,
                                             int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), key, line));
    if (out.empty())
        throw parse_error("line " + std::to_string(line) + ": key '" + key + "' expects values");
    return out;
}

inline state parse_state(const std::string& value, const std::string& key, int line) {
    const auto xs = parse_number_list(value, key, line);
    if (xs.size() != 2)
        throw parse_error("line " + std::to_string(line) + ": key '" + key +
                          "' expects 'u,v' (two numbers)");
    return {xs[0], xs[1]};
}

} // namespace detail

/// Applies one `key = value` assignment. Shared by the file parser and
/// the command-line --override path (which passes line = 0).
inline void apply_key(sim_config& cfg, const std::string& key, const std::string& value,
                      int line = 0) {
    using detail::parse_number;
    using detail::parse_number_list;
    using detail::parse_state;
    if (key == "law") cfg.law_name = value;
    else if (key == "epsilon") cfg.epsilon = parse_number(value, key, line);
    else if (key == "k") cfg.k = parse_number(value, key, line);
    else if (key == "p") cfg.p = parse_number(value, key, line);
    else if (key == "m") cfg.m = parse_number(value, key, line);
    else if (key == "M") cfg.M = parse_number(value, key, line);
    else if (key == "x_min") cfg.grid.x_min = parse_number(value, key, line);
    else if (key == "x_max") cfg.grid.x_max = parse_number(value, key, line);
    else if (key == "n_cells") {
        const double n = parse_number(value, key, line);
        if (n < 1 || n != std::floor(n))
            throw validation_error("n_cells must be a positive integer");
        cfg.grid.n = static_cast<std::size_t>(n);
    } else if (key == "t_end") cfg.t_end = parse_number(value, key, line);
    else if (key == "cfl_adv") cfg.cfl_adv = parse_number(value, key, line);
    else if (key == "cfl_diff") cfg.cfl_diff = parse_number(value, key, line);
    else if (key == "cadence") {
        const double c = parse_number(value, key, line);
        if (c < 1 || c != std::floor(c)) throw validation_error("cadence must be a positive integer");
        cfg.cadence = static_cast<int>(c);
    } else if (key == "representation") {
        if (value == "invariant") cfg.rep = representation::invariant;
        else if (value == "conservative") cfg.rep = representation::conservative;
        else throw validation_error("representation must be invariant or conservative");
    } else if (key == "boundary") cfg.boundary = value;
    else if (key == "scenario") cfg.scn.kind = scenario_kind_from(value);
    else if (key == "left") cfg.scn.left = parse_state(value, key, line);
    else if (key == "right") cfg.scn.right = parse_state(value, key, line);
    else if (key == "jump_position") cfg.scn.jump_position = parse_number(value, key, line);
    else if (key == "r0") cfg.scn.r0 = parse_number(value, key, line);
    else if (key == "xi_left") cfg.scn.xi_left = parse_number(value, key, line);
    else if (key == "xi_right") cfg.scn.xi_right = parse_number(value, key, line);
    else if (key == "center") cfg.scn.center = parse_number(value, key, line);
    else if (key == "amplitude") cfg.scn.amplitude = parse_number(value, key, line);
    else if (key == "wavelength") cfg.scn.wavelength = parse_number(value, key, line);
    else if (key == "mollifier_width") {
        if (value == "auto") cfg.scn.mollifier_width = -1.0;
        else {
            const double w = parse_number(value, key, line);
            if (w < 0.0) throw validation_error("mollifier_width must be >= 0 or auto");
            cfg.scn.mollifier_width = w;
        }
    } else if (key == "table") {
        // format: x0:u0:v0; x1:u1:v1; ...  (first x is ignored as -inf edge)
        cfg.scn.table_breaks.clear();
        cfg.scn.table_states.clear();
        std::stringstream ss(value);
        std::string entry;
        bool first = true;
        while (std::getline(ss, entry, ';')) {
            entry = detail::trim(entry);
            if (entry.empty()) continue;
            std::stringstream es(entry);
            std::string sx, su, sv;
            if (!std::getline(es, sx, ':') || !std::getline(es, su, ':') ||
                !std::getline(es, sv))
                throw parse_error("line " + std::to_string(line) +
                                  ": table entries take the form x:u:v");
            const double x = parse_number(detail::trim(sx), key, line);
            const double u = parse_number(detail::trim(su), key, line);
            const double v = parse_number(detail::trim(sv), key, line);
            if (!first) cfg.scn.table_breaks.push_back(x);
            cfg.scn.table_states.push_back({u, v});
            first = false;
        }
        if (cfg.scn.table_states.empty())
            throw parse_error("line " + std::to_string(line) + ": empty table");
    } else {
        throw validation_error("unknown config key '" + key + "'");
    }
}

inline sim_config parse_config_text(std::istream& in) {
    sim_config cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = detail::trim(raw);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw parse_error("line " + std::to_string(line) +
                              ": expected 'key = value', got '" + s + "'");
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (key.empty())
            throw parse_error("line " + std::to_string(line) + ": missing key before '='");
        apply_key(cfg, key, value, line);
    }
    return cfg;
}

/// Reads, applies overrides (as `key=value` strings), validates.
inline sim_config parse_config(const std::string& path,
                               const std::vector<std::string>& overrides = {}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    sim_config cfg = parse_config_text(in);
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw parse_error("override '" + ov + "' must have the form key=value");
        apply_key(cfg, detail::trim(ov.substr(0, eq)), detail::trim(ov.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

namespace detail {

inline std::string num_to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline std::map<std::string, std::string> sim_config::echo() const {
    using detail::num_to_string;
    std::map<std::string, std::string> kv;
    kv["law"] = law_name;
    kv["epsilon"] = num_to_string(epsilon);
    kv["k"] = num_to_string(k);
    kv["p"] = num_to_string(p);
    kv["m"] = num_to_string(m);
    kv["M"] = num_to_string(M);
    kv["x_min"] = num_to_string(grid.x_min);
    kv["x_max"] = num_to_string(grid.x_max);
    kv["n_cells"] = std::to_string(grid.n);
    kv["t_end"] = num_to_string(t_end);
    kv["cfl_adv"] = num_to_string(cfl_adv);
    kv["cfl_diff"] = num_to_string(cfl_diff);
    kv["representation"] = to_string(rep);
    kv["cadence"] = std::to_string(cadence);
    kv["boundary"] = boundary;
    kv["scenario"] = to_string(scn.kind);
    kv["jump_position"] = num_to_string(scn.jump_position);
    kv["mollifier_width"] =
        scn.mollifier_width < 0.0 ? std::string("auto") : num_to_string(scn.mollifier_width);
    switch (scn.kind) {
        case scenario_kind::riemann:
        case scenario_kind::constant:
            kv["left"] = num_to_string(scn.left.u) + "," + num_to_string(scn.left.v);
            kv["right"] = num_to_string(scn.right.u) + "," + num_to_string(scn.right.v);
            break;
        case scenario_kind::contact:
            kv["r0"] = num_to_string(scn.r0);
            kv["xi_left"] = num_to_string(scn.xi_left);
            kv["xi_right"] = num_to_string(scn.xi_right);
            break;
        case scenario_kind::smooth_sine:
            kv["center"] = num_to_string(scn.center);
            kv["amplitude"] = num_to_string(scn.amplitude);
            kv["wavelength"] = num_to_string(scn.wavelength);
            break;
        case scenario_kind::custom_table: {
            std::string t;
            for (std::size_t j = 0; j < scn.table_states.size(); ++j) {
                if (j) t += "; ";
                const double x = j == 0 ? grid.x_min : scn.table_breaks[j - 1];
                t += num_to_string(x) + ":" + num_to_string(scn.table_states[j].u) + ":" +
                     num_to_string(scn.table_states[j].v);
            }
            kv["table"] = t;
            break;
        }
    }
    return kv;
}

} // namespace kklab
