#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <kklab/kklab.hpp>

namespace fs = std::filesystem;
using namespace kklab;

namespace {

state parse_state_flag(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw validation_error(flag + " expects 'u,v', got '" + text + "'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw validation_error(flag + " expects two numbers, got '" + text + "'");
    }
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw validation_error(flag + ": bad number '" + item + "'");
        }
    }
    if (out.empty()) throw validation_error(flag + " expects at least one number");
    return out;
}

json state_json(const state& s) {
    return json{{"u", s.u}, {"v", s.v}, {"r", s.r()}, {"xi", s.xi()}};
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());
}

struct simulate_options {
    std::string config;
    std::vector<std::string> overrides;
    std::string out = ".";
    bool dump_all = false;
};

int cmd_simulate(const simulate_options& o) {
    const sim_config cfg = parse_config(o.config, o.overrides);
    ensure_dir(o.out);

    entropy_pair<any_law> pair(cfg.law(), cfg.k, cfg.p, cfg.m);
    entropy_ledger<any_law> ledger(pair, cfg.grid, cfg.resolved_boundary(), cfg.epsilon);
    run_options ro;
    ro.on_step = [&](const step_event& ev) { ledger.on_step(ev); };
    ro.on_snapshot = [&](const snapshot& snap) { ledger.on_snapshot(snap); };

    const auto start = std::chrono::steady_clock::now();
    const trajectory traj = run_viscous(cfg, ro);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    const auto path = [&](const std::string& name) { return (fs::path(o.out) / name).string(); };
    write_snapshot_csv(path("initial.csv"), traj.grid, traj.initial().fields);
    write_snapshot_csv(path("final.csv"), traj.grid, traj.final().fields);
    if (o.dump_all) {
        for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
            write_snapshot_csv(path(name), traj.grid, traj.snapshots[i].fields);
        }
    }
    write_ledger_csv(path("ledger.csv"), ledger);
    const json meta = meta_report(cfg, traj, wall_ms);
    write_json(path("meta.json"), meta);
    std::cout << meta.dump(2) << "\n";
    return 0;
}

struct riemann_options {
    std::string left, right;
    std::string law = "thin_film";
    double t = 1.0;
    std::string out;
    std::size_t samples = 400;
    double x_min = -5.0, x_max = 5.0;
};

int cmd_riemann(const riemann_options& o) {
    const any_law law = law_by_name(o.law);
    const state l = parse_state_flag(o.left, "--left");
    const state r = parse_state_flag(o.right, "--right");
    const auto sol = solve_riemann(law, l, r);

    json j;
    j["schema"] = "kklab.riemann.v1";
    j["law"] = o.law;
    j["left"] = state_json(sol.left);
    j["middle"] = state_json(sol.middle);
    j["right"] = state_json(sol.right);
    j["contact_speed"] = sol.contact_speed;
    switch (sol.fast_wave) {
        case wave_kind::shock:
            j["fast_wave"] = "shock";
            j["shock_speed"] = sol.shock_speed;
            j["lax_admissible"] = sol.lax_admissible;
            break;
        case wave_kind::rarefaction:
            j["fast_wave"] = "rarefaction";
            j["fan_head"] = sol.fan_head;
            j["fan_tail"] = sol.fan_tail;
            break;
        case wave_kind::none: j["fast_wave"] = "none"; break;
    }
    j["slowest_speed"] = sol.slowest_speed();
    j["fastest_speed"] = sol.fastest_speed();
    std::cout << j.dump(2) << "\n";

    if (!o.out.empty()) {
        grid1d g{o.x_min, o.x_max, o.samples};
        g.validate();
        field_pair f;
        f.u.resize(g.n);
        f.v.resize(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            const state s = sol.sample(g.center(i), o.t);
            f.u[i] = s.u;
            f.v[i] = s.v;
        }
        write_snapshot_csv(o.out, g, f);
    }
    return 0;
}

struct converge_options {
    std::string config;
    std::vector<std::string> overrides;
    std::string eps = "0.4,0.2,0.1,0.05";
    std::string reference = "exact";
    int jobs = 1;
    std::string out = ".";
};

int cmd_converge(const converge_options& o) {
    const sim_config cfg = parse_config(o.config, o.overrides);
    const auto ladder = parse_double_list(o.eps, "--eps");
    reference_kind ref;
    if (o.reference == "exact") ref = reference_kind::exact;
    else if (o.reference == "finest") ref = reference_kind::finest;
    else throw validation_error("--reference must be exact or finest");

    const convergence_table table = convergence_study(cfg, ladder, ref, o.jobs);
    ensure_dir(o.out);
    write_convergence_csv((fs::path(o.out) / "convergence.csv").string(), table);

    json j;
    j["schema"] = "kklab.convergence_report.v1";
    j["reference"] = table.reference;
    if (std::isfinite(table.order_estimate)) j["order_estimate"] = table.order_estimate;
    else j["order_estimate"] = nullptr;
    j["rows"] = json::array();
    for (const auto& row : table.rows) {
        json rj;
        rj["eps"] = row.eps;
        rj["n"] = row.n;
        rj["dx"] = row.dx;
        rj["l1_error"] = row.l1_error;
        rj["eps_rx_linf"] = row.eps_rx_linf;
        rj["wall_ms"] = row.wall_ms;
        rj["failed"] = row.failed;
        if (row.failed) rj["message"] = row.message;
        j["rows"].push_back(rj);
    }
    write_json((fs::path(o.out) / "report.json").string(), j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct check_options {
    double k = 1.0;
    double p = 1.0;
    double m = 0.5;
    double M = 4.0;
    std::string law = "thin_film";
    int grid = 50;
};

int cmd_check(const check_options& o) {
    const any_law law = law_by_name(o.law);
    const entropy_pair<any_law> pair(law, o.k, o.p, o.m);

    double min_eig = std::numeric_limits<double>::infinity();
    double max_compat = 0.0;
    for (int i = 0; i < o.grid; ++i) {
        for (int j = 0; j < o.grid; ++j) {
            const double u = o.m + (o.M - o.m) * i / (o.grid - 1);
            const double v = o.m + (o.M - o.m) * j / (o.grid - 1);
            min_eig = std::min(min_eig, pair.hessian({u, v}).min_eig());
            max_compat = std::max(max_compat, pair.compatibility_residual({u, v}));
        }
    }
    const auto conditions = check_general_pair(power_ratio_pair_spec(o.k, o.p), o.m * o.m,
                                               o.M * o.M, o.m / o.M, o.M / o.m);

    json j;
    j["schema"] = "kklab.check.v1";
    j["law"] = o.law;
    j["k"] = o.k;
    j["p"] = o.p;
    j["m"] = o.m;
    j["M"] = o.M;
    j["min_hessian_eigenvalue"] = min_eig;
    j["compatibility_max_residual"] = max_compat;
    j["conditions"] = {{"psi_decreasing", conditions.psi_decreasing},
                       {"psi_convex", conditions.psi_convex},
                       {"psi_power_form", conditions.psi_power_form},
                       {"theta_nonnegative_form", conditions.theta_nonnegative_form},
                       {"quadratic_forms_positive", conditions.quadratic_forms_positive}};
    j["pass"] = min_eig > 0.0 && max_compat <= 1e-6 && conditions.pass();
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct demo_options {
    std::string config;
    std::vector<std::string> overrides;
    std::string out;
};

int cmd_demo(const demo_options& o) {
    const sim_config cfg = parse_config(o.config, o.overrides);
    const identity_diffusion_report rep = demo_identity_diffusion(cfg);
    json j;
    j["schema"] = "kklab.demo.v1";
    j["max_r_initial"] = rep.max_r_initial;
    j["max_r_peak"] = rep.max_r_peak;
    j["overshoot"] = rep.overshoot;
    j["exceeded"] = rep.exceeded;
    j["tailored_max_r_peak"] = rep.tailored_max_r_peak;
    j["tailored_overshoot"] = rep.tailored_overshoot;
    std::cout << j.dump(2) << "\n";
    if (!o.out.empty()) write_json(o.out, j);
    return 0;
}

struct flux_options {
    std::string law;
    double r_min = 0.25;
    double r_max = 16.0;
    int samples = 2048;
};

int cmd_validate_flux(const flux_options& o) {
    const any_law law = law_by_name(o.law);
    const law_validation_report rep = validate_flux_law(law, o.r_min, o.r_max, o.samples);
    json j;
    j["schema"] = "kklab.flux_validation.v1";
    j["law"] = o.law;
    j["r_min"] = o.r_min;
    j["r_max"] = o.r_max;
    j["phi_increasing"] = rep.phi_increasing;
    j["nonlinearity_isolated_zeros"] = rep.nonlinearity_isolated_zeros;
    j["indicator_sign_changes"] = rep.indicator_sign_changes;
    j["min_dphi"] = rep.min_dphi;
    j["min_field_gap"] = rep.min_field_gap;
    j["pass"] = rep.pass();
    std::cout << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D laboratory for a coupled pair of conservation laws with tailored "
                 "nonlinear viscosity: exact Riemann solutions, viscous and inviscid runs, "
                 "entropy diagnostics, and vanishing-viscosity studies."};
    app.require_subcommand(1);

    simulate_options so;
    auto* sim = app.add_subcommand("simulate", "Run one configured simulation to t_end");
    sim->add_option("--config", so.config, "key = value config file")->required();
    sim->add_option("--override", so.overrides, "extra key=value settings (repeatable)");
    sim->add_option("--out", so.out, "output directory (default .)");
    sim->add_flag("--dump-all", so.dump_all, "write every snapshot, not just first/last");

    riemann_options ro;
    auto* rie = app.add_subcommand("riemann", "Solve a Riemann problem exactly");
    rie->add_option("--left", ro.left, "left state as u,v")->required();
    rie->add_option("--right", ro.right, "right state as u,v")->required();
    rie->add_option("--flux-law,--law", ro.law, "flux law name (default thin_film)");
    rie->add_option("--t", ro.t, "sampling time for --out (default 1)");
    rie->add_option("--out", ro.out, "write sampled profile CSV here");
    rie->add_option("--samples", ro.samples, "cells in the sampled profile (default 400)");
    rie->add_option("--x-min", ro.x_min, "left edge of the sampled profile (default -5)");
    rie->add_option("--x-max", ro.x_max, "right edge of the sampled profile (default 5)");

    converge_options co;
    auto* con = app.add_subcommand("converge", "Vanishing-viscosity ladder study");
    con->add_option("--config", co.config, "base config file")->required();
    con->add_option("--override", co.overrides, "extra key=value settings (repeatable)");
    con->add_option("--eps", co.eps, "comma-separated ladder (default 0.4,0.2,0.1,0.05)");
    con->add_option("--reference", co.reference, "exact | finest (default exact)");
    con->add_option("--jobs", co.jobs, "concurrent runs (default 1)");
    con->add_option("--out", co.out, "output directory (default .)");

    check_options ko;
    auto* chk = app.add_subcommand("check", "Verify an entropy pair's convexity and flux match");
    chk->add_option("--k", ko.k, "power exponent, > 0")->required();
    chk->add_option("--p", ko.p, "ratio exponent, >= 1/2")->required();
    chk->add_option("--m", ko.m, "lower box edge (default 0.5)");
    chk->add_option("--M", ko.M, "upper box edge (default 4)");
    chk->add_option("--flux-law,--law", ko.law, "flux law name (default thin_film)");
    chk->add_option("--grid", ko.grid, "sampling grid per axis (default 50)");

    demo_options mo;
    auto* dem = app.add_subcommand("demo-identity-diffusion",
                                   "Contrast scalar diffusion against the coupled matrix");
    dem->add_option("--config", mo.config, "config file with the crafted datum")->required();
    dem->add_option("--override", mo.overrides, "extra key=value settings (repeatable)");
    dem->add_option("--out", mo.out, "also write the JSON report here");

    flux_options fo;
    auto* vf = app.add_subcommand("validate-flux", "Check a flux law's admissibility conditions");
    vf->add_option("--flux-law,--law", fo.law, "flux law name")->required();
    vf->add_option("--r-min", fo.r_min, "lower r bound (default 0.25)");
    vf->add_option("--r-max", fo.r_max, "upper r bound (default 16)");
    vf->add_option("--samples", fo.samples, "sample count (default 2048)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*sim) return cmd_simulate(so);
        if (*rie) return cmd_riemann(ro);
        if (*con) return cmd_converge(co);
        if (*chk) return cmd_check(ko);
        if (*dem) return cmd_demo(mo);
        if (*vf) return cmd_validate_flux(fo);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
