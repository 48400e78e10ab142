#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include <kklab/kklab.hpp>

using namespace kklab;

namespace {

sim_config shock_config(std::size_t n, double t_end) {
    sim_config cfg;
    cfg.scn.kind = scenario_kind::riemann;
    cfg.scn.left = {2.0, 2.0};
    cfg.scn.right = {1.0, 1.0};
    cfg.grid = {-5.0, 5.0, n};
    cfg.t_end = t_end;
    return cfg;
}

entropy_pair<thin_film_law> standard_pair(double m = 0.5) {
    return entropy_pair<thin_film_law>(thin_film_law{}, 1.0, 1.0, m);
}

trajectory run_with_ledger(const sim_config& cfg, entropy_ledger<thin_film_law>& ledger,
                           bool inviscid = false) {
    run_options opt;
    opt.on_step = [&](const step_event& ev) { ledger.on_step(ev); };
    opt.on_snapshot = [&](const snapshot& s) { ledger.on_snapshot(s); };
    return inviscid ? run_hyperbolic(cfg, opt) : run_viscous(cfg, opt);
}

/// Exact weak solution moving a fast-family jump at the given speed; the jump
/// satisfies the jump condition but runs against the speed ordering.
trajectory synthetic_moving_jump(const state& l, const state& r, double speed, double t_end) {
    trajectory traj;
    traj.grid = {-5.0, 5.0, 200};
    traj.boundary = boundary_kind::outflow;
    const int steps = 100;
    for (int j = 0; j <= steps; ++j) {
        const double t = t_end * j / steps;
        snapshot snap;
        snap.t = t;
        snap.step = j;
        snap.fields.u.resize(traj.grid.n);
        snap.fields.v.resize(traj.grid.n);
        for (std::size_t i = 0; i < traj.grid.n; ++i) {
            const bool lhs = traj.grid.center(i) < speed * t;
            snap.fields.u[i] = lhs ? l.u : r.u;
            snap.fields.v[i] = lhs ? l.v : r.v;
        }
        traj.snapshots.push_back(std::move(snap));
    }
    traj.total_steps = steps;
    return traj;
}

} // namespace

TEST_CASE("variation and distance helpers") {
    CHECK(total_variation({1.0, 3.0, 2.0}) == 3.0);
    CHECK(total_variation({5.0}) == 0.0);

    const std::vector<double> a{0.0, 1.0, 2.0};
    const std::vector<double> b{1.0, 1.0, 0.0};
    CHECK(lp_distance(a, b, 1.0, 0.5) == Catch::Approx(1.5).epsilon(1e-15));
    CHECK(lp_distance(a, b, 2.0, 0.5) ==
          Catch::Approx(std::sqrt(2.5)).epsilon(1e-15));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(lp_distance(a, b, inf, 0.5) == 2.0);
    CHECK_THROWS_AS(lp_distance(a, {1.0, 2.0}, 1.0, 0.5), length_mismatch);
    CHECK_THROWS_AS(lp_distance(a, b, 3.0, 0.5), validation_error);

    field_pair fa(3), fb(3);
    fa.u = {1.0, 1.0, 1.0};
    fa.v = {2.0, 2.0, 2.0};
    fb.u = {1.0, 2.0, 1.0};
    fb.v = {2.0, 2.0, 1.0};
    CHECK(lp_distance(fa, fb, 1.0, 1.0) == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(lp_distance(fa, fb, inf, 1.0) == 1.0);
}

TEST_CASE("region report: extremes and first offender") {
    field_pair f(4);
    f.u = {0.5, 0.5, 0.5, 0.5};
    f.v = {0.5, 0.5, 0.5, 0.5};
    const auto ok = invariant_region_check(f, 0.5, 4.0);
    CHECK(ok.pass);
    CHECK(ok.first_offending == -1);
    CHECK(ok.u_min == 0.5);
    CHECK(ok.u_max == 0.5);
    CHECK(ok.r_min == 0.25);
    CHECK(ok.xi_max == 1.0);

    f.u[2] = 5.0;
    const auto bad = invariant_region_check(f, 0.5, 4.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_offending == 2);
    CHECK(bad.u_max == 5.0);
    CHECK(bad.r_max == 2.5);

    const auto slackened = invariant_region_check(f, 0.5, 5.0, 1e-12);
    CHECK(slackened.pass);
}

TEST_CASE("level crossing by linear interpolation") {
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    CHECK(level_crossing(x, {0.0, 1.0, 2.0, 3.0}, 1.5).value() == Catch::Approx(1.5));
    CHECK(level_crossing(x, {4.0, 4.0, 1.0, 1.0}, 2.0).value() ==
          Catch::Approx(1.0 + 2.0 / 3.0).epsilon(1e-14));
    CHECK(level_crossing(x, {2.0, 4.0, 6.0, 8.0}, 2.0).value() == 0.0);
    CHECK_FALSE(level_crossing(x, {1.0, 1.0, 1.0, 1.0}, 2.0).has_value());
    CHECK_THROWS_AS(level_crossing(x, {1.0, 2.0}, 1.5), length_mismatch);
}

TEST_CASE("ledger on a constant periodic run balances to zero") {
    sim_config cfg;
    cfg.scn.kind = scenario_kind::constant;
    cfg.scn.left = {2.0, 2.0};
    cfg.grid = {-5.0, 5.0, 64};
    cfg.t_end = 0.1;
    auto ledger = entropy_ledger<thin_film_law>(standard_pair(), cfg.grid,
                                                boundary_kind::periodic, cfg.epsilon);
    run_with_ledger(cfg, ledger);
    REQUIRE(ledger.rows().size() >= 2);
    CHECK(ledger.rows().front().residual == 0.0);
    CHECK(ledger.residual_at(0.0) == 0.0);
    CHECK(ledger.max_abs_residual() == 0.0);
    CHECK(ledger.max_corrected_total_increase() == 0.0);
}

TEST_CASE("ledger boundary account matches the datum flux imbalance") {
    sim_config cfg = shock_config(200, 0.1);
    const auto pair = standard_pair();
    auto ledger =
        entropy_ledger<thin_film_law>(pair, cfg.grid, boundary_kind::outflow, cfg.epsilon);
    run_with_ledger(cfg, ledger);
    const auto& last = ledger.rows().back();
    const double expected =
        cfg.t_end * (pair.Q(state{1.0, 1.0}) - pair.Q(state{2.0, 2.0}));
    CHECK(last.boundary_flux == Catch::Approx(expected).epsilon(1e-12));
    CHECK(last.dissipation > 0.0);
    const double scale = std::max(1.0, std::abs(ledger.initial_total()));
    CHECK(ledger.max_corrected_total_increase() <= 1e-10 * scale);
}

TEST_CASE("ledger residual shrinks under grid refinement") {
    auto residual_for = [&](std::size_t n) {
        sim_config cfg;
        cfg.scn.kind = scenario_kind::smooth_sine;
        cfg.grid = {-5.0, 5.0, n};
        cfg.t_end = 0.25;
        auto ledger = entropy_ledger<thin_film_law>(standard_pair(), cfg.grid,
                                                    boundary_kind::periodic, cfg.epsilon);
        run_with_ledger(cfg, ledger);
        return ledger.max_abs_residual();
    };
    const double coarse = residual_for(200);
    const double fine = residual_for(400);
    CHECK(coarse > 0.0);
    const double ratio = coarse / fine;
    CHECK(ratio >= 1.5);
    CHECK(ratio <= 3.0);
}

TEST_CASE("bump test functions: analytic derivatives and the standard bank") {
    bump_test_function b;
    b.amplitude = 1.3;
    b.x0 = 0.5;
    b.w = 1.5;
    b.t0 = 0.4;
    b.s = 0.3;
    const double h = 1e-6;
    for (double x : {-0.4, 0.5, 1.1})
        for (double t : {0.3, 0.45, 0.6}) {
            const double fdx = (b.value(x + h, t) - b.value(x - h, t)) / (2 * h);
            const double fdt = (b.value(x, t + h) - b.value(x, t - h)) / (2 * h);
            CHECK(b.ddx(x, t) == Catch::Approx(fdx).margin(1e-7).epsilon(1e-6));
            CHECK(b.ddt(x, t) == Catch::Approx(fdt).margin(1e-7).epsilon(1e-6));
        }
    CHECK(b.value(b.x0 + b.w, 0.45) == 0.0);
    CHECK(b.value(b.x0, b.t0 + b.s) == 0.0);

    const auto bank = standard_test_bank(-5.0, 5.0, 1.0);
    REQUIRE(bank.size() == 5);
    for (const auto& f : bank) {
        CHECK(f.t0 + f.s <= 1.0 + 1e-12);
        CHECK(f.x0 - f.w >= -5.0);
        CHECK(f.x0 + f.w <= 5.0);
    }
    CHECK(bank[1].t0 == 0.0);
    CHECK(bank[0].x0 == Catch::Approx(1.75));
    CHECK_THROWS_AS(standard_test_bank(5.0, -5.0, 1.0), validation_error);
}

TEST_CASE("residual quadrature rejects unusable inputs") {
    sim_config cfg = shock_config(100, 0.2);
    const thin_film_law tf;

    cfg.cadence = 20;
    const trajectory sparse = run_viscous(cfg);
    CHECK_THROWS_AS(weak_residual(sparse, tf, standard_test_bank(-5.0, 5.0, 0.2)),
                    insufficient_cadence);

    cfg.cadence = 10;
    const trajectory traj = run_viscous(cfg);
    bump_test_function late;
    late.x0 = 0.0;
    late.w = 1.0;
    late.t0 = 0.19;
    late.s = 0.1;
    CHECK_THROWS_WITH(weak_residual(traj, tf, {late}),
                      Catch::Matchers::ContainsSubstring("final time"));

    bump_test_function wide;
    wide.x0 = 4.0;
    wide.w = 2.0;
    wide.t0 = 0.05;
    wide.s = 0.05;
    CHECK_THROWS_WITH(weak_residual(traj, tf, {wide}),
                      Catch::Matchers::ContainsSubstring("domain"));

    bump_test_function flipped = standard_test_bank(-5.0, 5.0, 0.2)[0];
    flipped.amplitude = -1.0;
    CHECK_THROWS_AS(entropy_inequality_residual(traj, standard_pair(), {flipped}),
                    validation_error);
}

TEST_CASE("constant data reproduce the weak form to rounding") {
    sim_config cfg;
    cfg.scn.kind = scenario_kind::constant;
    cfg.scn.left = {2.0, 2.0};
    cfg.grid = {-5.0, 5.0, 128};
    cfg.t_end = 0.2;
    const trajectory traj = run_viscous(cfg);
    const auto bank = standard_test_bank(-5.0, 5.0, cfg.t_end);
    CHECK(weak_residual(traj, thin_film_law{}, bank) <= 1e-12);
    CHECK(entropy_inequality_residual(traj, standard_pair(), bank) <= 1e-12);
}

TEST_CASE("viscous run satisfies the corrected entropy inequality") {
    sim_config cfg = shock_config(200, 0.5);
    const trajectory traj = run_viscous(cfg);
    const auto bank = standard_test_bank(-5.0, 5.0, cfg.t_end);
    const double violation =
        entropy_inequality_residual(traj, standard_pair(), bank, cfg.epsilon);
    CHECK(violation <= 1e-8);
}

TEST_CASE("speed-ordering violation is caught; captured shock is clean") {
    const auto pair = standard_pair();
    const auto bank = standard_test_bank(-5.0, 5.0, 1.0);

    const trajectory wrong = synthetic_moving_jump({1.0, 1.0}, {2.0, 2.0}, 3.5, 1.0);
    CHECK(weak_residual(wrong, thin_film_law{}, bank) <= 0.05);
    CHECK(entropy_inequality_residual(wrong, pair, bank) > 1e-3);

    const trajectory right = synthetic_moving_jump({2.0, 2.0}, {1.0, 1.0}, 3.5, 1.0);
    CHECK(entropy_inequality_residual(wrong, pair, bank) >
          entropy_inequality_residual(right, pair, bank));

    const sim_config cfg = shock_config(200, 1.0);
    const trajectory captured = run_hyperbolic(cfg);
    CHECK(entropy_inequality_residual(captured, pair, bank) <= 1e-8);
}

TEST_CASE("vanishing-viscosity smoke study against the exact profile") {
    sim_config base = shock_config(400, 1.0);
    const auto table = convergence_study(base, {0.4, 0.2}, reference_kind::exact);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.reference == "exact");
    CHECK_FALSE(table.rows[0].failed);
    CHECK_FALSE(table.rows[1].failed);
    CHECK(table.rows[0].n == 100);
    CHECK(table.rows[1].n == 200);
    CHECK(table.rows[0].l1_error == Catch::Approx(1.1085261972194413).epsilon(1e-12));
    CHECK(table.rows[1].l1_error == Catch::Approx(0.6144128262687304).epsilon(1e-12));
    CHECK(table.rows[1].l1_error < table.rows[0].l1_error);
    CHECK(table.rows[0].eps_rx_linf > 0.0);
    CHECK(std::isfinite(table.order_estimate));
    CHECK(table.order_estimate > 0.0);

    const auto again = convergence_study(base, {0.4, 0.2}, reference_kind::exact);
    CHECK(again.rows[0].l1_error == table.rows[0].l1_error);
    CHECK(again.rows[1].l1_error == table.rows[1].l1_error);
}

TEST_CASE("reference-run study and ladder validation") {
    sim_config base = shock_config(400, 1.0);
    const auto table = convergence_study(base, {0.4, 0.2}, reference_kind::finest, 2);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.reference == "finest");
    CHECK_FALSE(table.rows[0].failed);
    CHECK_FALSE(table.rows[1].failed);
    CHECK(table.rows[1].l1_error < table.rows[0].l1_error);

    CHECK_THROWS_AS(convergence_study(base, {}, reference_kind::exact), validation_error);
    CHECK_THROWS_AS(convergence_study(base, {0.2, 0.4}, reference_kind::exact),
                    validation_error);
    CHECK_THROWS_AS(convergence_study(base, {0.4, -0.2}, reference_kind::exact),
                    validation_error);
    CHECK_THROWS_AS(convergence_study(base, {0.4, 0.2}, reference_kind::exact, 0),
                    validation_error);
    CHECK_THROWS_AS(convergence_study(base, {0.4, 0.3}, reference_kind::finest),
                    validation_error);

    sim_config sine = base;
    sine.scn.kind = scenario_kind::smooth_sine;
    CHECK_THROWS_AS(convergence_study(sine, {0.4, 0.2}, reference_kind::exact),
                    validation_error);
}
