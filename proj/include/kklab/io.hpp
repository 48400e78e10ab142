#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kklab/config.hpp"
#include "kklab/diagnostics.hpp"
#include "kklab/errors.hpp"
#include "kklab/trajectory.hpp"

namespace kklab {

using json = nlohmann::json;

inline constexpr const char* snapshot_schema = "kklab.snapshot.v1";
inline constexpr const char* ledger_schema = "kklab.ledger.v1";
inline constexpr const char* convergence_schema = "kklab.convergence.v1";
inline constexpr const char* meta_schema = "kklab.meta.v1";

/// 17 significant digits: enough to reproduce any double bitwise on reread.
inline std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps \n endings everywhere
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    return out;
}

inline void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw io_error("write to '" + path + "' failed");
}

} // namespace detail

inline void write_snapshot_csv(const std::string& path, const grid1d& g, const field_pair& f) {
    auto out = detail::open_out(path);
    out << "# schema: " << snapshot_schema << "\n";
    out << "x,u,v,r,xi\n";
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        const double u = f.u[i], v = f.v[i];
        out << fmt17(g.center(i)) << ',' << fmt17(u) << ',' << fmt17(v) << ',' << fmt17(u * v)
            << ',' << fmt17(u / v) << "\n";
    }
    detail::finish(out, path);
}

struct snapshot_table {
    std::vector<double> x;
    field_pair fields;
};

inline snapshot_table read_snapshot_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    snapshot_table tab;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "x,u,v,r,xi")
                throw parse_error("'" + path + "' line " + std::to_string(lineno) +
                                  ": expected header 'x,u,v,r,xi'");
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw parse_error("'" + path + "' line " + std::to_string(lineno) +
                                  ": bad number '" + cell + "'");
            }
        }
        if (row.size() != 5)
            throw parse_error("'" + path + "' line " + std::to_string(lineno) +
                              ": expected 5 columns");
        tab.x.push_back(row[0]);
        tab.fields.u.push_back(row[1]);
        tab.fields.v.push_back(row[2]);
    }
    if (!header_seen) throw parse_error("'" + path + "' has no snapshot header");
    return tab;
}

template <flux_law Law>
void write_ledger_csv(const std::string& path, const entropy_ledger<Law>& ledger) {
    auto out = detail::open_out(path);
    out << "# schema: " << ledger_schema << "\n";
    out << "t,total_entropy,dissipation_accum,boundary_flux_accum,residual\n";
    for (const auto& r : ledger.rows())
        out << fmt17(r.t) << ',' << fmt17(r.total) << ',' << fmt17(r.dissipation) << ','
            << fmt17(r.boundary_flux) << ',' << fmt17(r.residual) << "\n";
    detail::finish(out, path);
}

inline void write_convergence_csv(const std::string& path, const convergence_table& table) {
    auto out = detail::open_out(path);
    out << "# schema: " << convergence_schema << "\n";
    out << "eps,n,dx,l1_error,eps_rx_linf,wall_ms,failed\n";
    for (const auto& r : table.rows)
        out << fmt17(r.eps) << ',' << r.n << ',' << fmt17(r.dx) << ',' << fmt17(r.l1_error)
            << ',' << fmt17(r.eps_rx_linf) << ',' << fmt17(r.wall_ms) << ','
            << (r.failed ? 1 : 0) << "\n";
    detail::finish(out, path);
}

/// Stable-key-ordered (nlohmann::json sorts object keys) with a trailing newline.
inline void write_json(const std::string& path, const json& j) {
    auto out = detail::open_out(path);
    out << j.dump(2) << "\n";
    detail::finish(out, path);
}

inline json meta_report(const sim_config& cfg, const trajectory& traj, double wall_ms) {
    json j;
    j["schema"] = meta_schema;
    j["config"] = cfg.echo();
    j["total_steps"] = traj.total_steps;
    j["snapshot_count"] = traj.snapshots.size();
    j["final_time"] = traj.snapshots.back().t;
    j["wall_ms"] = wall_ms;
    return j;
}

inline json region_report_json(const region_report& rep) {
    json j;
    j["pass"] = rep.pass;
    j["u_min"] = rep.u_min;
    j["u_max"] = rep.u_max;
    j["v_min"] = rep.v_min;
    j["v_max"] = rep.v_max;
    j["r_min"] = rep.r_min;
    j["r_max"] = rep.r_max;
    j["xi_min"] = rep.xi_min;
    j["xi_max"] = rep.xi_max;
    j["first_offending"] = rep.first_offending;
    return j;
}

} // namespace kklab
