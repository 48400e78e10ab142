#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "kklab/config.hpp"
#include "kklab/errors.hpp"
#include "kklab/model.hpp"
#include "kklab/trajectory.hpp"

namespace kklab {

/// Per-step observer payload for runs that evolve (theta, xi) natively.
struct invariant_step_event {
    std::int64_t step = 0;
    double t_before = 0.0;
    double dt = 0.0;
    const invariant_fields& before;
    const invariant_fields& after;
};

struct run_options {
    /// Fired after every accepted step with conserved-variable views.
    std::function<void(const step_event&)> on_step;
    /// Fired after every accepted step of an invariant-representation run.
    std::function<void(const invariant_step_event&)> on_invariant_step;
    /// Fired whenever a snapshot is recorded (including the initial one).
    std::function<void(const snapshot&)> on_snapshot;
    /// When positive, bypasses the stability-limited time step. The state
    /// guards still apply, so an oversized value fails loudly rather than
    /// silently producing garbage.
    double forced_dt = 0.0;
};

/// Largest step honouring both the advective CFL limit (including the
/// ratio-transport speed, which carries a gradient correction) and the
/// diffusive limit dt <= cfl_diff * dx^2 / (4 eps).
inline double stable_dt(const any_law& law, const field_pair& f, const grid1d& g, double epsilon,
                        double cfl_adv, double cfl_diff,
                        boundary_kind bc = boundary_kind::outflow) {
    const std::size_t n = f.u.size();
    const double dx = g.dx();
    double smax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = f.u[i] * f.v[i];
        const double rl = f.u[detail::left_of(i, n, bc)] * f.v[detail::left_of(i, n, bc)];
        const double rr = f.u[detail::right_of(i, n, bc)] * f.v[detail::right_of(i, n, bc)];
        const double b = law.phi(r) - epsilon * (rr - rl) / (2.0 * dx) / r;
        smax = std::max({smax, std::abs(law.phi(r)), std::abs(fast_speed(law, r)), std::abs(b)});
    }
    const double inf = std::numeric_limits<double>::infinity();
    const double dt_adv = smax > 0.0 ? cfl_adv * dx / smax : inf;
    const double dt_diff = epsilon > 0.0 ? cfl_diff * dx * dx / (4.0 * epsilon) : inf;
    return std::min(dt_adv, dt_diff);
}

/// One forward-Euler update of theta_t + lam2(theta^2) theta_x = 2 eps theta_xx
/// (upwinded advection, centred diffusion) and of the passively transported
/// ratio xi_t + b xi_x = 0 with b = phi(r) - eps r_x / r.
inline void step_invariant(const any_law& law, const invariant_fields& cur,
                           invariant_fields& next, const grid1d& g, boundary_kind bc,
                           double epsilon, double dt) {
    const std::size_t n = cur.theta.size();
    const double dx = g.dx();
    next.theta.resize(n);
    next.xi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t il = detail::left_of(i, n, bc);
        const std::size_t ir = detail::right_of(i, n, bc);
        const double th = cur.theta[i];
        const double thl = cur.theta[il];
        const double thr = cur.theta[ir];
        const double r = th * th;
        const double a = fast_speed(law, r);
        const double dth = a >= 0.0 ? (th - thl) / dx : (thr - th) / dx;
        const double lap = (thr - 2.0 * th + thl) / (dx * dx);
        next.theta[i] = th - dt * a * dth + dt * 2.0 * epsilon * lap;

        const double rx = (thr * thr - thl * thl) / (2.0 * dx);
        const double b = law.phi(r) - epsilon * rx / r;
        const double xi = cur.xi[i];
        const double dxi = b >= 0.0 ? (xi - cur.xi[il]) / dx : (cur.xi[ir] - xi) / dx;
        next.xi[i] = xi - dt * b * dxi;
    }
}

/// One finite-volume update of U_t + F(U)_x = eps (B(U) U_x)_x with a Rusanov
/// convective flux and a face-centred diffusive flux. Since B U_x =
/// (r_x / v, r_x / u), the face flux uses the jump of r across the face over
/// harmonic means of v (resp. u).
inline void step_conservative(const any_law& law, const field_pair& cur, field_pair& next,
                              const grid1d& g, boundary_kind bc, double epsilon, double dt) {
    const std::size_t n = cur.u.size();
    const double dx = g.dx();
    next.u.resize(n);
    next.v.resize(n);
    auto face_flux = [&](std::size_t i, std::size_t j) {
        const state a = cur.at(i);
        const state b = cur.at(j);
        state h = rusanov_flux(law, a, b);
        if (epsilon > 0.0) {
            const double dr = b.r() - a.r();
            const double hv = 2.0 * a.v * b.v / (a.v + b.v);
            const double hu = 2.0 * a.u * b.u / (a.u + b.u);
            h.u -= epsilon * dr / dx / hv;
            h.v -= epsilon * dr / dx / hu;
        }
        return h;
    };
    state left_flux = face_flux(detail::left_of(0, n, bc), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const state right_flux = face_flux(i, detail::right_of(i, n, bc));
        next.u[i] = cur.u[i] - dt / dx * (right_flux.u - left_flux.u);
        next.v[i] = cur.v[i] - dt / dx * (right_flux.v - left_flux.v);
        left_flux = right_flux;
    }
}

namespace detail {

inline void require_finite_in_box(const std::vector<double>& xs, double lo, double hi,
                                  double slack, std::int64_t step, const char* what) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        if (!std::isfinite(x))
            throw stability_violation(std::string(what) + " became non-finite at step " +
                                      std::to_string(step) + ", cell " + std::to_string(i));
        if (x < lo - slack || x > hi + slack)
            throw state_space_exit(std::string(what) + " left [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "] at step " + std::to_string(step) +
                                   ", cell " + std::to_string(i) + " (value " +
                                   std::to_string(x) + ")");
    }
}

inline void reconstruct(const invariant_fields& inv, field_pair& cons) {
    const std::size_t n = inv.theta.size();
    cons.u.resize(n);
    cons.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = inv.theta[i] * inv.theta[i];
        const state s = from_invariants({r, inv.xi[i]});
        cons.u[i] = s.u;
        cons.v[i] = s.v;
    }
}

} // namespace detail

/// Runs the viscous solver described by `cfg` to t_end and returns the
/// recorded trajectory. The representation field selects whether the native
/// evolution variables are (theta, xi) or (u, v).
inline trajectory run_viscous(const sim_config& cfg, const run_options& opt = {}) {
    cfg.validate();
    const any_law law = cfg.law();
    const grid1d g = cfg.grid;
    const boundary_kind bc = cfg.resolved_boundary();
    const double slack = 1e-12 * std::max(1.0, cfg.M);
    const bool invariant_rep = cfg.rep == representation::invariant;

    field_pair cons = cfg.scn.build(g);
    field_pair cons_next;
    invariant_fields inv, inv_next;
    if (invariant_rep) {
        inv = to_invariant_fields(cons);
        cons_next = cons;
    }

    trajectory traj;
    traj.grid = g;
    traj.boundary = bc;
    auto record = [&](double t, std::int64_t step) {
        traj.snapshots.push_back({t, step, cons});
        if (opt.on_snapshot) opt.on_snapshot(traj.snapshots.back());
    };
    record(0.0, 0);

    const double t_tol = 1e-12 * std::max(1.0, cfg.t_end);
    double t = 0.0;
    std::int64_t step = 0;
    while (t < cfg.t_end && cfg.t_end - t > t_tol) {
        double dt = opt.forced_dt > 0.0
                        ? opt.forced_dt
                        : stable_dt(law, cons, g, cfg.epsilon, cfg.cfl_adv, cfg.cfl_diff, bc);
        dt = std::min(dt, cfg.t_end - t);

        if (invariant_rep) {
            step_invariant(law, inv, inv_next, g, bc, cfg.epsilon, dt);
            detail::require_finite_in_box(inv_next.theta, cfg.m, cfg.M, slack, step + 1, "theta");
            detail::require_finite_in_box(inv_next.xi, cfg.m / cfg.M, cfg.M / cfg.m, slack,
                                          step + 1, "xi");
            detail::reconstruct(inv_next, cons_next);
        } else {
            step_conservative(law, cons, cons_next, g, bc, cfg.epsilon, dt);
            detail::require_finite_in_box(cons_next.u, cfg.m, cfg.M, slack, step + 1, "u");
            detail::require_finite_in_box(cons_next.v, cfg.m, cfg.M, slack, step + 1, "v");
        }

        if (opt.on_step) opt.on_step({step + 1, t, dt, cons, cons_next});
        if (invariant_rep && opt.on_invariant_step)
            opt.on_invariant_step({step + 1, t, dt, inv, inv_next});

        std::swap(cons, cons_next);
        if (invariant_rep) std::swap(inv, inv_next);
        t += dt;
        ++step;
        if (step % cfg.cadence == 0 || !(t < cfg.t_end && cfg.t_end - t > t_tol))
            record(t, step);
    }
    if (traj.snapshots.back().step != step) record(t, step);
    traj.total_steps = step;
    return traj;
}

} // namespace kklab
