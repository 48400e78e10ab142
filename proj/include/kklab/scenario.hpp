#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kklab/errors.hpp"
#include "kklab/flux_law.hpp"
#include "kklab/grid.hpp"
#include "kklab/mollify.hpp"
#include "kklab/model.hpp"
#include "kklab/riemann.hpp"

namespace kklab {

enum class scenario_kind { riemann, contact, smooth_sine, constant, custom_table };

inline std::string to_string(scenario_kind k) {
    switch (k) {
        case scenario_kind::riemann: return "riemann";
        case scenario_kind::contact: return "contact";
        case scenario_kind::smooth_sine: return "smooth_sine";
        case scenario_kind::constant: return "constant";
        case scenario_kind::custom_table: return "custom_table";
    }
    return "?";
}

inline scenario_kind scenario_kind_from(const std::string& s) {
    if (s == "riemann") return scenario_kind::riemann;
    if (s == "contact") return scenario_kind::contact;
    if (s == "smooth_sine") return scenario_kind::smooth_sine;
    if (s == "constant") return scenario_kind::constant;
    if (s == "custom_table") return scenario_kind::custom_table;
    throw validation_error("unknown scenario '" + s + "'");
}

/// Initial-data recipe. Interpretation of the fields depends on `kind`:
///  - riemann:     left/right states joined at jump_position, mollified in (u,v)
///  - contact:     ratio jump xi_left -> xi_right at constant product r0,
///                 mollified in xi so the product is constant to the bit
///  - smooth_sine: u = center + amplitude sin(2 pi x / wavelength),
///                 v = center + amplitude cos(2 pi x / wavelength)
///  - constant:    left state everywhere
///  - custom_table: piecewise-constant breakpoints (sorted by x)
struct scenario {
    scenario_kind kind = scenario_kind::riemann;

    state left{2.0, 2.0};
    state right{1.0, 1.0};
    double jump_position = 0.0;

    double r0 = 2.0;
    double xi_left = 0.5;
    double xi_right = 2.0;

    double center = 1.5;
    double amplitude = 0.5;
    double wavelength = 10.0;

    std::vector<double> table_breaks;   ///< ascending jump locations
    std::vector<state> table_states;    ///< one more entry than breaks

    /// Kernel half-width; negative means "auto" (2 dx for jump data, 0 else).
    double mollifier_width = -1.0;

    double resolved_width(const grid1d& g) const {
        if (mollifier_width >= 0.0) return mollifier_width;
        switch (kind) {
            case scenario_kind::riemann:
            case scenario_kind::contact: return 2.0 * g.dx();
            default: return 0.0;
        }
    }

    bool wants_periodic() const {
        return kind == scenario_kind::smooth_sine || kind == scenario_kind::constant;
    }

    field_pair build(const grid1d& g) const {
        field_pair fp(g.n);
        const double w = resolved_width(g);
        switch (kind) {
            case scenario_kind::riemann:
                for (std::size_t i = 0; i < g.n; ++i) {
                    const double x = g.center(i);
                    fp.u[i] = mollified_step(x, left.u, right.u, jump_position, w);
                    fp.v[i] = mollified_step(x, left.v, right.v, jump_position, w);
                }
                break;
            case scenario_kind::contact: {
                const double th = std::sqrt(r0);
                for (std::size_t i = 0; i < g.n; ++i) {
                    const double xi =
                        mollified_step(g.center(i), xi_left, xi_right, jump_position, w);
                    const double s = std::sqrt(xi);
                    fp.u[i] = th * s;
                    fp.v[i] = th / s;
                }
                break;
            }
            case scenario_kind::smooth_sine:
                for (std::size_t i = 0; i < g.n; ++i) {
                    const double ph = 2.0 * std::numbers::pi * g.center(i) / wavelength;
                    fp.u[i] = center + amplitude * std::sin(ph);
                    fp.v[i] = center + amplitude * std::cos(ph);
                }
                break;
            case scenario_kind::constant:
                std::fill(fp.u.begin(), fp.u.end(), left.u);
                std::fill(fp.v.begin(), fp.v.end(), left.v);
                break;
            case scenario_kind::custom_table: {
                std::vector<double> us(table_states.size()), vs(table_states.size());
                for (std::size_t j = 0; j < table_states.size(); ++j) {
                    us[j] = table_states[j].u;
                    vs[j] = table_states[j].v;
                }
                fp.u = mollify_piecewise(table_breaks, us, w, g);
                fp.v = mollify_piecewise(table_breaks, vs, w, g);
                break;
            }
        }
        return fp;
    }

    /// All states the datum can take (for box validation / speed bounds).
    std::vector<state> reference_states() const {
        switch (kind) {
            case scenario_kind::riemann: return {left, right};
            case scenario_kind::contact:
                return {from_invariants(r0, xi_left), from_invariants(r0, xi_right)};
            case scenario_kind::smooth_sine: {
                std::vector<state> out;
                for (double su : {-1.0, 0.0, 1.0})
                    for (double sv : {-1.0, 0.0, 1.0})
                        out.push_back({center + amplitude * su, center + amplitude * sv});
                return out;
            }
            case scenario_kind::constant: return {left};
            case scenario_kind::custom_table: return table_states;
        }
        return {};
    }

    /// Checks states against the admissible box, and for jump data on
    /// outflow domains that no wave reaches the boundary before t_end.
    void validate(const any_law& law, double m, double M, double t_end,
                  boundary_kind bc, const grid1d& g) const {
        g.validate();
        for (const auto& s : reference_states()) {
            if (!in_box(s, m, M))
                throw validation_error(
                    "scenario state (" + std::to_string(s.u) + ", " + std::to_string(s.v) +
                    ") violates the [m, M]^2 box [" + std::to_string(m) + ", " +
                    std::to_string(M) + "]^2");
        }
        if (kind == scenario_kind::custom_table) {
            if (table_states.size() != table_breaks.size() + 1)
                throw validation_error("custom_table needs one more state than breakpoints");
            if (!std::is_sorted(table_breaks.begin(), table_breaks.end()))
                throw validation_error("custom_table breakpoints must be ascending");
        }
        if (bc == boundary_kind::outflow && t_end > 0.0) {
            double speed = 0.0;
            double span = 0.0;
            if (kind == scenario_kind::riemann) {
                const auto sol = solve_riemann(law, left, right);
                speed = std::max(std::abs(sol.slowest_speed()), std::abs(sol.fastest_speed()));
                span = std::abs(jump_position - 0.5 * (g.x_min + g.x_max));
            } else {
                for (const auto& s : reference_states()) {
                    const double r = s.r();
                    speed = std::max({speed, std::abs(law.phi(r)),
                                      std::abs(fast_speed(law, r))});
                }
            }
            if (speed * t_end + span >= g.half_width())
                throw validation_error(
                    "domain too small for outflow boundaries: fastest wave (" +
                    std::to_string(speed) + ") times t_end (" + std::to_string(t_end) +
                    ") reaches the boundary; widen [x_min, x_max]");
        }
    }
};

} // namespace kklab
