#pragma once

#include <array>
#include <cmath>
#include <string>

#include "kklab/errors.hpp"
#include "kklab/flux_law.hpp"

namespace kklab {

/// Point value of the conserved pair.
struct state {
    double u = 0.0;
    double v = 0.0;

    double r() const { return u * v; }
    double xi() const { return u / v; }
};

/// The same point in the diagonalizing coordinates (r, xi) = (uv, u/v).
struct invariant_state {
    double r = 0.0;
    double xi = 0.0;
};

inline invariant_state to_invariants(const state& s) { return {s.r(), s.xi()}; }

inline state from_invariants(const invariant_state& w) {
    return {std::sqrt(w.r * w.xi), std::sqrt(w.r / w.xi)};
}

inline state from_invariants(double r, double xi) { return from_invariants({r, xi}); }

/// True when both components lie in [m, M] up to slack.
inline bool in_box(const state& s, double m, double M, double slack = 0.0) {
    return s.u >= m - slack && s.u <= M + slack && s.v >= m - slack && s.v <= M + slack;
}

/// Flux of the conserved pair: (u phi(uv), v phi(uv)).
template <flux_law Law>
std::array<double, 2> flux(const Law& law, const state& s) {
    const double p = law.phi(s.r());
    return {s.u * p, s.v * p};
}

/// Jacobian of the flux, row-major 2x2.
template <flux_law Law>
std::array<double, 4> flux_jacobian(const Law& law, const state& s) {
    const double r = s.r();
    const double p = law.phi(r), dp = law.dphi(r);
    return {p + r * dp, s.u * s.u * dp, s.v * s.v * dp, p + r * dp};
}

/// Characteristic speeds and directions at a state.
struct eigensystem {
    double lambda_slow = 0.0;              ///< phi(r)
    double lambda_fast = 0.0;              ///< phi(r) + 2 r phi'(r)
    std::array<double, 2> dir_slow{};      ///< (-u, v)
    std::array<double, 2> dir_fast{};      ///< (u, v)
    double gap() const { return lambda_fast - lambda_slow; }
};

template <flux_law Law>
eigensystem eigen(const Law& law, const state& s) {
    const double r = s.r();
    eigensystem e;
    e.lambda_slow = law.phi(r);
    e.lambda_fast = fast_speed(law, r);
    e.dir_slow = {-s.u, s.v};
    e.dir_fast = {s.u, s.v};
    return e;
}

/// Directional derivative of the slow speed along its own eigendirection.
/// Identically zero: the slow family is linearly degenerate.
template <flux_law Law>
double slow_field_nonlinearity(const Law& law, const state& s) {
    const double dp = law.dphi(s.r());
    // grad(lambda_slow) = phi'(r) (v, u); dotted with (-u, v):
    return dp * (-s.u * s.v + s.v * s.u);
}

/// Directional derivative of the fast speed along its own eigendirection:
/// 6 r phi'(r) + 4 r^2 phi''(r). Nonzero means genuine nonlinearity.
template <flux_law Law>
double fast_field_nonlinearity(const Law& law, const state& s) {
    const double r = s.r();
    return 6.0 * r * law.dphi(r) + 4.0 * r * r * law.d2phi(r);
}

enum class field_kind { linearly_degenerate, genuinely_nonlinear, degenerate_point };

template <flux_law Law>
field_kind classify_fast_field(const Law& law, const state& s, double tol = 1e-12) {
    const double g = fast_field_nonlinearity(law, s);
    return std::abs(g) <= tol ? field_kind::degenerate_point : field_kind::genuinely_nonlinear;
}

/// Applies the tailored diffusion matrix [[1, u/v], [v/u, 1]] to a vector.
inline std::array<double, 2> apply_coupling_matrix(const state& s,
                                                   const std::array<double, 2>& w) {
    return {w[0] + (s.u / s.v) * w[1], (s.v / s.u) * w[0] + w[1]};
}

/// Local Lax-Friedrichs numerical flux; the wave-speed bound takes the larger
/// characteristic speed magnitude over both adjacent states.
template <flux_law Law>
state rusanov_flux(const Law& law, const state& a, const state& b) {
    const auto fa = flux(law, a);
    const auto fb = flux(law, b);
    const eigensystem ea = eigen(law, a);
    const eigensystem eb = eigen(law, b);
    const double alpha = std::max({std::abs(ea.lambda_slow), std::abs(ea.lambda_fast),
                                   std::abs(eb.lambda_slow), std::abs(eb.lambda_fast)});
    return {0.5 * (fa[0] + fb[0]) - 0.5 * alpha * (b.u - a.u),
            0.5 * (fa[1] + fb[1]) - 0.5 * alpha * (b.v - a.v)};
}

} // namespace kklab
