#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <kklab/kklab.hpp>

using namespace kklab;

namespace {

sim_config shock_config() {
    sim_config cfg;
    cfg.scn.kind = scenario_kind::riemann;
    cfg.scn.left = {2.0, 2.0};
    cfg.scn.right = {1.0, 1.0};
    cfg.epsilon = 0.1;
    cfg.grid = {-5.0, 5.0, 200};
    cfg.t_end = 0.3;
    return cfg;
}

long double mass(const std::vector<double>& xs) {
    long double s = 0.0L;
    for (double x : xs) s += x;
    return s;
}

} // namespace

TEST_CASE("step-size bound: diffusive limit on a constant state") {
    const any_law law = law_by_name("thin_film");
    const grid1d g{-5.0, 5.0, 200};
    field_pair f(g.n);
    std::fill(f.u.begin(), f.u.end(), 2.0);
    std::fill(f.v.begin(), f.v.end(), 2.0);
    CHECK(stable_dt(law, f, g, 0.1, 0.45, 0.4) == Catch::Approx(0.0025).epsilon(1e-14));
    CHECK(stable_dt(law, f, g, 0.0, 0.45, 0.4) == Catch::Approx(0.00375).epsilon(1e-14));
}

TEST_CASE("native invariants obey the maximum principle step by step") {
    sim_config cfg = shock_config();
    double theta_lo = 1e300, theta_hi = -1e300;
    run_options opt;
    opt.on_invariant_step = [&](const invariant_step_event& ev) {
        for (double th : ev.after.theta) {
            theta_lo = std::min(theta_lo, th);
            theta_hi = std::max(theta_hi, th);
        }
    };
    const trajectory traj = run_viscous(cfg, opt);
    CHECK(theta_lo >= 1.0 - 1e-12);
    CHECK(theta_hi <= 2.0 + 1e-12);
    const auto rep = invariant_region_check(traj.final().fields, 1.0, 2.0, 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("ratio variation never grows") {
    sim_config cfg = shock_config();
    cfg.scn.right = {0.5, 2.0};
    cfg.m = 0.25;
    double tv0 = -1.0;
    bool monotone = true;
    run_options opt;
    opt.on_invariant_step = [&](const invariant_step_event& ev) {
        const double before = total_variation(ev.before.xi);
        const double after = total_variation(ev.after.xi);
        if (tv0 < 0.0) tv0 = before;
        if (after > before + 1e-12) monotone = false;
    };
    run_viscous(cfg, opt);
    CHECK(tv0 == Catch::Approx(0.75).epsilon(1e-10));
    CHECK(monotone);
}

TEST_CASE("both representations land on the same profile") {
    sim_config cfg = shock_config();
    cfg.grid.n = 400;
    cfg.t_end = 0.5;
    cfg.rep = representation::invariant;
    const trajectory a = run_viscous(cfg);
    cfg.rep = representation::conservative;
    const trajectory b = run_viscous(cfg);
    const double d =
        lp_distance(a.final().fields, b.final().fields, 1.0, cfg.grid.dx());
    CHECK(d <= 0.4375);
    CHECK(d > 0.0);
}

TEST_CASE("periodic finite-volume run conserves both components") {
    sim_config cfg;
    cfg.scn.kind = scenario_kind::smooth_sine;
    cfg.rep = representation::conservative;
    cfg.grid = {-5.0, 5.0, 128};
    cfg.t_end = 0.05;
    const trajectory traj = run_viscous(cfg);
    REQUIRE(traj.boundary == boundary_kind::periodic);
    const long double u0 = mass(traj.initial().fields.u);
    const long double v0 = mass(traj.initial().fields.v);
    const long double u1 = mass(traj.final().fields.u);
    const long double v1 = mass(traj.final().fields.v);
    CHECK(std::abs(static_cast<double>(u1 - u0)) <= 1e-12 * std::abs(static_cast<double>(u0)));
    CHECK(std::abs(static_cast<double>(v1 - v0)) <= 1e-12 * std::abs(static_cast<double>(v0)));
}

TEST_CASE("zero horizon returns the datum untouched") {
    sim_config cfg = shock_config();
    cfg.t_end = 0.0;
    const trajectory traj = run_viscous(cfg);
    REQUIRE(traj.snapshots.size() == 1);
    CHECK(traj.total_steps == 0);
    CHECK(traj.final().t == 0.0);
    const field_pair datum = cfg.scn.build(cfg.grid);
    for (std::size_t i = 0; i < datum.u.size(); ++i) {
        CHECK(traj.final().fields.u[i] == datum.u[i]);
        CHECK(traj.final().fields.v[i] == datum.v[i]);
    }
}

TEST_CASE("identical configurations reproduce bit-identical trajectories") {
    sim_config cfg = shock_config();
    cfg.t_end = 0.1;
    const trajectory a = run_viscous(cfg);
    const trajectory b = run_viscous(cfg);
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    CHECK(a.total_steps == b.total_steps);
    for (std::size_t i = 0; i < a.final().fields.u.size(); ++i) {
        CHECK(a.final().fields.u[i] == b.final().fields.u[i]);
        CHECK(a.final().fields.v[i] == b.final().fields.v[i]);
    }
}

TEST_CASE("an oversized forced step fails loudly") {
    sim_config cfg = shock_config();
    run_options opt;
    opt.forced_dt = 0.1;
    CHECK_THROWS_AS(run_viscous(cfg, opt), numerical_error);
}

TEST_CASE("snapshot cadence and clock bookkeeping") {
    sim_config cfg = shock_config();
    cfg.t_end = 0.1;
    cfg.cadence = 7;
    int snapshot_calls = 0;
    run_options opt;
    opt.on_snapshot = [&](const snapshot&) { ++snapshot_calls; };
    const trajectory traj = run_viscous(cfg, opt);
    REQUIRE(traj.snapshots.size() >= 2);
    CHECK(snapshot_calls == static_cast<int>(traj.snapshots.size()));
    CHECK(traj.initial().step == 0);
    CHECK(traj.final().step == traj.total_steps);
    CHECK(traj.final().t == Catch::Approx(cfg.t_end).margin(1e-12));
    for (std::size_t i = 1; i < traj.snapshots.size(); ++i) {
        CHECK(traj.snapshots[i].step > traj.snapshots[i - 1].step);
        CHECK(traj.snapshots[i].t > traj.snapshots[i - 1].t);
        CHECK(traj.snapshots[i].step - traj.snapshots[i - 1].step <= cfg.cadence);
    }
}

TEST_CASE("per-step observers see consistent clocks") {
    sim_config cfg = shock_config();
    cfg.t_end = 0.05;
    std::int64_t last_step = 0;
    double clock = 0.0;
    bool consistent = true;
    run_options opt;
    opt.on_step = [&](const step_event& ev) {
        if (ev.step != last_step + 1) consistent = false;
        if (std::abs(ev.t_before - clock) > 1e-14) consistent = false;
        clock = ev.t_before + ev.dt;
        last_step = ev.step;
    };
    const trajectory traj = run_viscous(cfg, opt);
    CHECK(consistent);
    CHECK(last_step == traj.total_steps);
    CHECK(clock == Catch::Approx(cfg.t_end).margin(1e-12));
}
