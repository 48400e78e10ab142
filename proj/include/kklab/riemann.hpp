#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "kklab/errors.hpp"
#include "kklab/flux_law.hpp"
#include "kklab/model.hpp"

namespace kklab {

/// Jump-condition defect s * (b - a) - (F(b) - F(a)), per component.
template <flux_law Law>
std::array<double, 2> rankine_hugoniot_residual(const Law& law, double s, const state& a,
                                                const state& b) {
    const auto fa = flux(law, a), fb = flux(law, b);
    return {s * (b.u - a.u) - (fb[0] - fa[0]), s * (b.v - a.v) - (fb[1] - fa[1])};
}

enum class wave_kind { none, shock, rarefaction };

/// Self-similar two-wave solution of the jump initial-value problem:
/// a contact discontinuity (slow family) followed by a shock or
/// rarefaction of the fast family.
template <flux_law Law>
class riemann_solution {
  public:
    state left, middle, right;
    double contact_speed = 0.0;
    wave_kind fast_wave = wave_kind::none;
    double shock_speed = 0.0;   ///< set when fast_wave == shock
    double fan_head = 0.0;      ///< fast speed at middle, set for rarefaction
    double fan_tail = 0.0;      ///< fast speed at right, set for rarefaction
    bool lax_admissible = true; ///< fast speeds straddle the shock speed

    riemann_solution(Law law, state l, state r) : left(l), right(r), law_(std::move(law)) {
        const double rl = left.r(), rr = right.r();
        check_wave_curve(rl, rr);
        middle = (std::abs(rl - rr) < 1e-13 && std::abs(left.xi() - right.xi()) < 1e-13)
                     ? left
                     : from_invariants(rl, right.xi());
        contact_speed = law_.phi(rl);
        if (std::abs(rl - rr) < 1e-13) {
            fast_wave = wave_kind::none;
        } else if (rl > rr) {
            fast_wave = wave_kind::shock;
            shock_speed = (std::sqrt(rr) * law_.phi(rr) - std::sqrt(rl) * law_.phi(rl)) /
                          (std::sqrt(rr) - std::sqrt(rl));
            lax_admissible = fast_speed(law_, rl) > shock_speed &&
                             shock_speed > fast_speed(law_, rr);
        } else {
            fast_wave = wave_kind::rarefaction;
            fan_head = fast_speed(law_, rl);
            fan_tail = fast_speed(law_, rr);
        }
    }

    /// Leading edge of the slow wave; trailing edge of the whole pattern.
    double slowest_speed() const { return contact_speed; }
    double fastest_speed() const {
        switch (fast_wave) {
            case wave_kind::shock: return shock_speed;
            case wave_kind::rarefaction: return fan_tail;
            default: return contact_speed;
        }
    }

    /// Value at (x, t); returns the datum when t == 0.
    state sample(double x, double t) const {
        if (t <= 0.0) return x < 0.0 ? left : right;
        const double c = x / t;
        if (c < contact_speed) return left;
        switch (fast_wave) {
            case wave_kind::none: return right;
            case wave_kind::shock: return c < shock_speed ? middle : right;
            case wave_kind::rarefaction: {
                if (c <= fan_head) return middle;
                if (c >= fan_tail) return right;
                return from_invariants(invert_fan_speed(c), right.xi());
            }
        }
        return right;
    }

  private:
    Law law_;

    void check_wave_curve(double rl, double rr) const {
        const double lo = std::min(rl, rr), hi = std::max(rl, rr);
        if (hi - lo < 1e-13) {
            if (!(law_.dphi(lo) > 0.0))
                throw admissibility_violation("flux law not increasing at the datum");
            return;
        }
        const int n = 256;
        double prev = fast_speed(law_, lo);
        for (int i = 1; i < n; ++i) {
            const double r = lo + (hi - lo) * i / (n - 1);
            if (!(law_.dphi(r) > 0.0))
                throw admissibility_violation("flux law not increasing on wave-curve range");
            const double cur = fast_speed(law_, r);
            if (cur <= prev)
                throw admissibility_violation(
                    "fast-family speed not strictly increasing in r; wave curve is not "
                    "single-valued for law '" + std::string(law_.name()) + "'");
            prev = cur;
        }
    }

    /// Solves fast_speed(r) = c for r inside the fan by bisection.
    double invert_fan_speed(double c) const {
        double lo = middle.r(), hi = right.r();
        double flo = fast_speed(law_, lo) - c, fhi = fast_speed(law_, hi) - c;
        if (flo > 0.0 || fhi < 0.0)
            throw root_not_bracketed("fan inversion: speed outside [head, tail]");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = fast_speed(law_, mid) - c;
            if (fm <= 0.0)
                lo = mid;
            else
                hi = mid;
            if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
        }
        return 0.5 * (lo + hi);
    }
};

template <flux_law Law>
riemann_solution<Law> solve_riemann(const Law& law, const state& left, const state& right) {
    return riemann_solution<Law>(law, left, right);
}

} // namespace kklab
