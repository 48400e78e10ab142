#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kklab/entropy.hpp"
#include "kklab/errors.hpp"
#include "kklab/mollify.hpp"
#include "kklab/riemann.hpp"
#include "kklab/trajectory.hpp"
#include "kklab/viscous.hpp"

namespace kklab {

inline double total_variation(const std::vector<double>& f) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) tv += std::abs(f[i + 1] - f[i]);
    return tv;
}

/// L^p distance of two sampled fields, p in {1, 2} or infinity for the max.
inline double lp_distance(const std::vector<double>& a, const std::vector<double>& b, double p,
                          double dx) {
    if (a.size() != b.size())
        throw length_mismatch("lp_distance: sizes " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
    if (p != 1.0 && p != 2.0) throw validation_error("lp_distance supports p = 1, 2, or inf");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(std::abs(a[i] - b[i]), p) * dx;
    return std::pow(acc, 1.0 / p);
}

/// Both components accumulated in one norm.
inline double lp_distance(const field_pair& a, const field_pair& b, double p, double dx) {
    if (a.u.size() != b.u.size() || a.v.size() != b.v.size())
        throw length_mismatch("lp_distance: field sizes differ");
    if (std::isinf(p))
        return std::max(lp_distance(a.u, b.u, p, dx), lp_distance(a.v, b.v, p, dx));
    if (p != 1.0 && p != 2.0) throw validation_error("lp_distance supports p = 1, 2, or inf");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.u.size(); ++i)
        acc += (std::pow(std::abs(a.u[i] - b.u[i]), p) + std::pow(std::abs(a.v[i] - b.v[i]), p)) *
               dx;
    return std::pow(acc, 1.0 / p);
}

struct region_report {
    double u_min = 0.0, u_max = 0.0;
    double v_min = 0.0, v_max = 0.0;
    double r_min = 0.0, r_max = 0.0;
    double xi_min = 0.0, xi_max = 0.0;
    bool pass = false;
    std::ptrdiff_t first_offending = -1; ///< cell index of the first violation, -1 if none
};

/// Checks every cell against [m - tol, M + tol]^2 and reports the observed
/// extremes of u, v, r = uv and xi = u/v.
inline region_report invariant_region_check(const field_pair& f, double m, double M,
                                            double tol = 0.0) {
    region_report rep;
    const std::size_t n = f.u.size();
    if (n == 0) return rep;
    rep.u_min = rep.u_max = f.u[0];
    rep.v_min = rep.v_max = f.v[0];
    rep.r_min = rep.r_max = f.u[0] * f.v[0];
    rep.xi_min = rep.xi_max = f.u[0] / f.v[0];
    rep.pass = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = f.u[i], v = f.v[i];
        rep.u_min = std::min(rep.u_min, u);
        rep.u_max = std::max(rep.u_max, u);
        rep.v_min = std::min(rep.v_min, v);
        rep.v_max = std::max(rep.v_max, v);
        rep.r_min = std::min(rep.r_min, u * v);
        rep.r_max = std::max(rep.r_max, u * v);
        rep.xi_min = std::min(rep.xi_min, u / v);
        rep.xi_max = std::max(rep.xi_max, u / v);
        const bool ok = u >= m - tol && u <= M + tol && v >= m - tol && v <= M + tol;
        if (!ok && rep.pass) {
            rep.pass = false;
            rep.first_offending = static_cast<std::ptrdiff_t>(i);
        }
    }
    return rep;
}

/// First location where the sampled field crosses the given level, by linear
/// interpolation between cell centers; empty if it never does.
inline std::optional<double> level_crossing(const std::vector<double>& x,
                                            const std::vector<double>& f, double level) {
    if (x.size() != f.size()) throw length_mismatch("level_crossing: sizes differ");
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        const double a = f[i] - level, b = f[i + 1] - level;
        if (a == 0.0) return x[i];
        if (a * b < 0.0) return x[i] + (x[i + 1] - x[i]) * a / (a - b);
    }
    if (!f.empty() && f.back() == level) return x.back();
    return std::nullopt;
}

/// Running discrete account of the entropy balance
///   d/dt sum E dx = -(boundary flux) - (viscous dissipation).
/// Attach on_step/on_snapshot to a run; rows land once per snapshot.
/// On outflow domains the boundary flux of Q does not vanish, so it is
/// accumulated explicitly and the monotone quantity is total + boundary_flux.
template <flux_law Law>
class entropy_ledger {
  public:
    struct row {
        double t = 0.0;
        double total = 0.0;           ///< sum E dx at the snapshot
        double dissipation = 0.0;     ///< accumulated viscous dissipation
        double boundary_flux = 0.0;   ///< accumulated net outflow of Q
        double residual = 0.0;        ///< total + dissipation + boundary_flux - initial
    };

    entropy_ledger(entropy_pair<Law> pair, grid1d g, boundary_kind bc, double epsilon)
        : pair_(std::move(pair)), grid_(g), bc_(bc), epsilon_(epsilon) {}

    void on_step(const step_event& ev) {
        const field_pair& f = ev.before;
        const std::size_t n = f.u.size();
        const double dx = grid_.dx();
        if (epsilon_ > 0.0) {
            double rate = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t il = detail::left_of(i, n, bc_);
                const std::size_t ir = detail::right_of(i, n, bc_);
                const double r = f.u[i] * f.v[i];
                const double rx =
                    (f.u[ir] * f.v[ir] - f.u[il] * f.v[il]) / (2.0 * dx);
                rate += pair_.dissipation_coefficient(r) * rx * rx * dx;
            }
            dissipation_accum_ += ev.dt * epsilon_ * rate;
        }
        if (bc_ == boundary_kind::outflow && n > 0)
            boundary_flux_accum_ += ev.dt * (pair_.Q(f.at(n - 1)) - pair_.Q(f.at(0)));
    }

    void on_snapshot(const snapshot& snap) {
        const double dx = grid_.dx();
        double total = 0.0;
        for (std::size_t i = 0; i < snap.fields.u.size(); ++i)
            total += pair_.E(snap.fields.at(i)) * dx;
        if (rows_.empty()) initial_total_ = total;
        row r;
        r.t = snap.t;
        r.total = total;
        r.dissipation = dissipation_accum_;
        r.boundary_flux = boundary_flux_accum_;
        r.residual = total + dissipation_accum_ + boundary_flux_accum_ - initial_total_;
        rows_.push_back(r);
    }

    const std::vector<row>& rows() const { return rows_; }
    double initial_total() const { return initial_total_; }

    double residual_at(double t) const {
        if (rows_.empty()) throw validation_error("entropy ledger has no rows");
        const row* best = &rows_.front();
        for (const row& r : rows_)
            if (std::abs(r.t - t) < std::abs(best->t - t)) best = &r;
        return best->residual;
    }

    double max_abs_residual() const {
        double m = 0.0;
        for (const row& r : rows_) m = std::max(m, std::abs(r.residual));
        return m;
    }

    /// Largest uphill move of the flux-corrected total across snapshots
    /// (0 for a perfectly monotone ledger).
    double max_corrected_total_increase() const {
        double worst = 0.0;
        for (std::size_t j = 0; j + 1 < rows_.size(); ++j) {
            const double a = rows_[j].total + rows_[j].boundary_flux;
            const double b = rows_[j + 1].total + rows_[j + 1].boundary_flux;
            worst = std::max(worst, b - a);
        }
        return worst;
    }

  private:
    entropy_pair<Law> pair_;
    grid1d grid_;
    boundary_kind bc_;
    double epsilon_;
    double dissipation_accum_ = 0.0;
    double boundary_flux_accum_ = 0.0;
    double initial_total_ = 0.0;
    std::vector<row> rows_;
};

/// Compactly supported space-time bump  a * j((x-x0)/w) * j((t-t0)/s)
/// built on the Friedrichs kernel, with analytic derivatives.
struct bump_test_function {
    double amplitude = 1.0;
    double x0 = 0.0, w = 1.0;
    double t0 = 0.0, s = 1.0;

    double space_part(double x) const { return smoothing_kernel((x - x0) / w); }
    double time_part(double t) const { return smoothing_kernel((t - t0) / s); }

    double value(double x, double t) const { return amplitude * space_part(x) * time_part(t); }
    double ddx(double x, double t) const {
        return amplitude / w * smoothing_kernel_derivative((x - x0) / w) * time_part(t);
    }
    double ddt(double x, double t) const {
        return amplitude / s * space_part(x) * smoothing_kernel_derivative((t - t0) / s);
    }
};

/// Five fixed bumps spread over the space-time box [x_lo, x_hi] x [0, T]:
/// varying widths and centers, one active at t = 0, all vanishing by t = T.
inline std::vector<bump_test_function> standard_test_bank(double x_lo, double x_hi, double T) {
    if (!(x_hi > x_lo) || !(T > 0.0))
        throw validation_error("test bank needs a nonempty space-time box");
    const double h = 0.5 * (x_hi - x_lo);
    const double mid = 0.5 * (x_lo + x_hi);
    const double fx[] = {0.35, 0.0, 0.6, -0.5, 0.2};
    const double fw[] = {0.3, 0.4, 0.3, 0.3, 0.2};
    const double ft[] = {0.5, 0.0, 0.75, 0.5, 0.3};
    const double fs[] = {0.45, 0.6, 0.24, 0.4, 0.25};
    std::vector<bump_test_function> bank;
    for (int j = 0; j < 5; ++j) {
        bump_test_function b;
        b.amplitude = 1.0;
        b.x0 = mid + fx[j] * h;
        b.w = fw[j] * h;
        b.t0 = ft[j] * T;
        b.s = fs[j] * T;
        if (b.t0 + b.s > T + 1e-12 * std::max(1.0, T))
            throw validation_error("test bank bump persists past the final time");
        bank.push_back(b);
    }
    return bank;
}

namespace detail {

inline void check_bank_against(const trajectory& traj,
                               const std::vector<bump_test_function>& bank) {
    if (traj.snapshots.size() < 2)
        throw validation_error("trajectory has fewer than two snapshots");
    const double T = traj.snapshots.back().t;
    const double t_slack = 1e-9 * std::max(1.0, T);
    const double x_slack = 1e-9 * std::max(1.0, traj.grid.half_width());
    for (const auto& b : bank) {
        if (b.t0 + b.s > T + t_slack)
            throw validation_error(
                "test function is still supported at the final time; residual quadrature "
                "requires it to vanish there");
        if (b.x0 - b.w < traj.grid.x_min - x_slack || b.x0 + b.w > traj.grid.x_max + x_slack)
            throw validation_error("test function support leaves the spatial domain");
    }
    for (std::size_t j = 0; j + 1 < traj.snapshots.size(); ++j) {
        const auto gap = traj.snapshots[j + 1].step - traj.snapshots[j].step;
        if (gap > 10)
            throw insufficient_cadence("snapshots are " + std::to_string(gap) +
                                       " steps apart; the residual quadrature needs <= 10");
    }
}

struct bump_tables {
    std::vector<double> center; ///< amplitude * space_part at cell centers
    std::vector<double> face;   ///< amplitude * space_part at the n+1 faces
};

inline bump_tables tabulate_bump(const bump_test_function& b, const grid1d& g) {
    bump_tables t;
    t.center.resize(g.n);
    t.face.resize(g.n + 1);
    for (std::size_t i = 0; i < g.n; ++i) t.center[i] = b.amplitude * b.space_part(g.center(i));
    for (std::size_t i = 0; i <= g.n; ++i) t.face[i] = b.amplitude * b.space_part(g.face(i));
    return t;
}

} // namespace detail

/// Largest magnitude, over the test bank and both components, of the discrete
/// weak form  integral of (U phi_t + F(U) phi_x)  +  integral of U0 phi(.,0).
/// The time term telescopes through the snapshot times, so constants are
/// reproduced to rounding.
template <flux_law Law>
double weak_residual(const trajectory& traj, const Law& law,
                     const std::vector<bump_test_function>& bank) {
    detail::check_bank_against(traj, bank);
    const grid1d& g = traj.grid;
    const double dx = g.dx();
    const auto& snaps = traj.snapshots;
    double worst = 0.0;
    for (const auto& b : bank) {
        const auto tab = detail::tabulate_bump(b, g);
        const double jt0 = b.time_part(snaps.front().t);
        double ru = 0.0, rv = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) {
            ru += snaps.front().fields.u[i] * tab.center[i] * jt0 * dx;
            rv += snaps.front().fields.v[i] * tab.center[i] * jt0 * dx;
        }
        for (std::size_t j = 0; j + 1 < snaps.size(); ++j) {
            const snapshot& a = snaps[j];
            const snapshot& c = snaps[j + 1];
            const double dt = c.t - a.t;
            if (dt <= 0.0) continue;
            const double jta = b.time_part(a.t);
            const double jtc = b.time_part(c.t);
            const double jtm = b.time_part(0.5 * (a.t + c.t));
            const double dj = jtc - jta;
            for (std::size_t i = 0; i < g.n; ++i) {
                ru += 0.5 * (a.fields.u[i] + c.fields.u[i]) * tab.center[i] * dj * dx;
                rv += 0.5 * (a.fields.v[i] + c.fields.v[i]) * tab.center[i] * dj * dx;
                const state mid{0.5 * (a.fields.u[i] + c.fields.u[i]),
                                0.5 * (a.fields.v[i] + c.fields.v[i])};
                const auto f = flux(law, mid);
                const double dphi = (tab.face[i + 1] - tab.face[i]) * jtm;
                ru += dt * f[0] * dphi;
                rv += dt * f[1] * dphi;
            }
        }
        worst = std::max({worst, std::abs(ru), std::abs(rv)});
    }
    return worst;
}

/// One-sided entropy check: largest violation, over the (nonnegative) test
/// bank, of  integral of (E phi_t + Q phi_x) + integral of E0 phi(.,0) >= 0.
/// For a viscous trajectory pass the run's epsilon: the transport part of the
/// entropy balance, epsilon * integral of (grad E . B U_x) phi_x, is then
/// subtracted so that what remains is the (signed) dissipation functional.
template <flux_law Law>
double entropy_inequality_residual(const trajectory& traj, const entropy_pair<Law>& pair,
                                   const std::vector<bump_test_function>& bank,
                                   double epsilon = 0.0) {
    detail::check_bank_against(traj, bank);
    const grid1d& g = traj.grid;
    const double dx = g.dx();
    const auto& snaps = traj.snapshots;
    const std::size_t n = g.n;
    double violation = 0.0;
    for (const auto& b : bank) {
        if (b.amplitude < 0.0)
            throw validation_error("entropy residual requires nonnegative test functions");
        const auto tab = detail::tabulate_bump(b, g);
        const double jt0 = b.time_part(snaps.front().t);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res += pair.E(snaps.front().fields.at(i)) * tab.center[i] * jt0 * dx;
        for (std::size_t j = 0; j + 1 < snaps.size(); ++j) {
            const snapshot& a = snaps[j];
            const snapshot& c = snaps[j + 1];
            const double dt = c.t - a.t;
            if (dt <= 0.0) continue;
            const double jta = b.time_part(a.t);
            const double jtc = b.time_part(c.t);
            const double jtm = b.time_part(0.5 * (a.t + c.t));
            const double dj = jtc - jta;
            std::vector<double> ubar(n), vbar(n);
            for (std::size_t i = 0; i < n; ++i) {
                ubar[i] = 0.5 * (a.fields.u[i] + c.fields.u[i]);
                vbar[i] = 0.5 * (a.fields.v[i] + c.fields.v[i]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                const state sa = a.fields.at(i);
                const state sc = c.fields.at(i);
                res += 0.5 * (pair.E(sa) + pair.E(sc)) * tab.center[i] * dj * dx;
                const state mid{ubar[i], vbar[i]};
                const double dphi = (tab.face[i + 1] - tab.face[i]) * jtm;
                res += dt * pair.Q(mid) * dphi;
                if (epsilon > 0.0) {
                    const std::size_t il = detail::left_of(i, n, traj.boundary);
                    const std::size_t ir = detail::right_of(i, n, traj.boundary);
                    const double rx =
                        (ubar[ir] * vbar[ir] - ubar[il] * vbar[il]) / (2.0 * dx);
                    const auto grad = pair.gradient(mid);
                    const double transport =
                        grad[0] * (rx / mid.v) + grad[1] * (rx / mid.u);
                    res -= dt * epsilon * transport * dphi;
                }
            }
        }
        violation = std::max(violation, std::max(0.0, -res));
    }
    return violation;
}

enum class reference_kind { exact, finest };

struct convergence_row {
    double eps = 0.0;
    std::size_t n = 0;
    double dx = 0.0;
    double l1_error = 0.0;
    double eps_rx_linf = 0.0; ///< eps * max(|r_x|) at the final time
    double wall_ms = 0.0;
    bool failed = false;
    std::string message;
};

struct convergence_table {
    std::vector<convergence_row> rows;
    /// least-squares slope of log(L1) vs log(eps) over the last three
    /// successful rungs; NaN when fewer than two are usable
    double order_estimate = std::numeric_limits<double>::quiet_NaN();
    std::string reference;
};

namespace detail {

struct rung_result {
    field_pair final_fields;
    double eps_rx_linf = 0.0;
    double wall_ms = 0.0;
    bool failed = false;
    std::string message;
};

inline rung_result execute_rung(sim_config cfg) {
    rung_result out;
    const auto start = std::chrono::steady_clock::now();
    try {
        const trajectory traj = run_viscous(cfg);
        out.final_fields = traj.final().fields;
        const std::size_t n = out.final_fields.u.size();
        const double dx = cfg.grid.dx();
        const boundary_kind bc = traj.boundary;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t il = left_of(i, n, bc);
            const std::size_t ir = right_of(i, n, bc);
            const double rx = (out.final_fields.u[ir] * out.final_fields.v[ir] -
                               out.final_fields.u[il] * out.final_fields.v[il]) /
                              (2.0 * dx);
            out.eps_rx_linf = std::max(out.eps_rx_linf, cfg.epsilon * std::abs(rx));
        }
    } catch (const error& e) {
        out.failed = true;
        out.message = e.what();
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
    return out;
}

inline field_pair block_average(const field_pair& fine, std::size_t n_coarse) {
    const std::size_t n_fine = fine.u.size();
    const std::size_t f = n_fine / n_coarse;
    field_pair out;
    out.u.resize(n_coarse);
    out.v.resize(n_coarse);
    for (std::size_t i = 0; i < n_coarse; ++i) {
        double su = 0.0, sv = 0.0;
        for (std::size_t j = 0; j < f; ++j) {
            su += fine.u[i * f + j];
            sv += fine.v[i * f + j];
        }
        out.u[i] = su / static_cast<double>(f);
        out.v[i] = sv / static_cast<double>(f);
    }
    return out;
}

} // namespace detail

/// Vanishing-viscosity study: one run per epsilon with dx <= eps/4 (so the
/// viscous layer stays resolved), L1 distance at t_end against either the
/// exact Riemann solution or a finer reference run at half the smallest eps.
inline convergence_table convergence_study(const sim_config& base, std::vector<double> ladder,
                                           reference_kind ref, int jobs = 1) {
    if (ladder.empty()) throw validation_error("epsilon ladder is empty");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0)) throw validation_error("epsilon ladder entries must be positive");
        if (i > 0 && !(ladder[i] < ladder[i - 1]))
            throw validation_error("epsilon ladder must decrease strictly");
    }
    if (jobs < 1) throw validation_error("jobs must be >= 1");
    if (ref == reference_kind::exact && base.scn.kind != scenario_kind::riemann &&
        base.scn.kind != scenario_kind::contact)
        throw validation_error("exact reference requires a riemann or contact scenario");

    const double span = base.grid.x_max - base.grid.x_min;
    auto cells_for = [&](double eps) {
        const double needed = std::ceil(4.0 * span / eps);
        return static_cast<std::size_t>(std::max(8.0, needed));
    };
    auto rung_config = [&](double eps) {
        sim_config cfg = base;
        cfg.epsilon = eps;
        cfg.grid.n = cells_for(eps);
        return cfg;
    };

    std::vector<sim_config> cfgs;
    for (double eps : ladder) cfgs.push_back(rung_config(eps));
    if (ref == reference_kind::finest) {
        const double eps_ref = ladder.back() / 2.0;
        sim_config ref_cfg = rung_config(eps_ref);
        for (const auto& cfg : cfgs)
            if (ref_cfg.grid.n % cfg.grid.n != 0)
                throw validation_error(
                    "finest-reference study needs every rung cell count to divide the "
                    "reference's; adjust the ladder");
        cfgs.push_back(ref_cfg);
    }

    std::vector<detail::rung_result> results(cfgs.size());
    if (jobs == 1) {
        for (std::size_t i = 0; i < cfgs.size(); ++i) results[i] = detail::execute_rung(cfgs[i]);
    } else {
        for (std::size_t begin = 0; begin < cfgs.size();
             begin += static_cast<std::size_t>(jobs)) {
            const std::size_t end =
                std::min(cfgs.size(), begin + static_cast<std::size_t>(jobs));
            std::vector<std::future<detail::rung_result>> batch;
            for (std::size_t i = begin; i < end; ++i)
                batch.push_back(
                    std::async(std::launch::async, detail::execute_rung, cfgs[i]));
            for (std::size_t i = begin; i < end; ++i) results[i] = batch[i - begin].get();
        }
    }

    convergence_table table;
    table.reference = ref == reference_kind::exact ? "exact" : "finest";
    const bool finest_ok = ref != reference_kind::finest || !results.back().failed;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        convergence_row row;
        row.eps = ladder[i];
        row.n = cfgs[i].grid.n;
        row.dx = cfgs[i].grid.dx();
        row.eps_rx_linf = results[i].eps_rx_linf;
        row.wall_ms = results[i].wall_ms;
        if (results[i].failed) {
            row.failed = true;
            row.message = results[i].message;
        } else if (ref == reference_kind::exact) {
            const any_law law = base.law();
            const auto refs = base.scn.reference_states();
            const auto exact = solve_riemann(law, refs.front(), refs.back());
            double acc = 0.0;
            for (std::size_t c = 0; c < cfgs[i].grid.n; ++c) {
                const double x = cfgs[i].grid.center(c) - base.scn.jump_position;
                const state ex = exact.sample(x, base.t_end);
                acc += (std::abs(results[i].final_fields.u[c] - ex.u) +
                        std::abs(results[i].final_fields.v[c] - ex.v)) *
                       row.dx;
            }
            row.l1_error = acc;
        } else if (finest_ok) {
            const field_pair coarse =
                detail::block_average(results.back().final_fields, cfgs[i].grid.n);
            row.l1_error = lp_distance(results[i].final_fields, coarse, 1.0, row.dx);
        } else {
            row.failed = true;
            row.message = "reference run failed: " + results.back().message;
        }
        table.rows.push_back(row);
    }

    std::vector<double> lx, ly;
    for (const auto& row : table.rows)
        if (!row.failed && row.l1_error > 0.0) {
            lx.push_back(std::log(row.eps));
            ly.push_back(std::log(row.l1_error));
        }
    const std::size_t fit = std::min<std::size_t>(3, lx.size());
    if (fit >= 2) {
        double sx = 0.0, sy = 0.0;
        const std::size_t off = lx.size() - fit;
        for (std::size_t i = off; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
        }
        const double mx = sx / fit, my = sy / fit;
        double num = 0.0, den = 0.0;
        for (std::size_t i = off; i < lx.size(); ++i) {
            num += (lx[i] - mx) * (ly[i] - my);
            den += (lx[i] - mx) * (lx[i] - mx);
        }
        if (den > 0.0) table.order_estimate = num / den;
    }
    return table;
}

} // namespace kklab
