#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

#include "kklab/errors.hpp"

namespace kklab {

/// Adaptive Gauss–Kronrod (7/15) integration on a finite interval.
///
/// Bisects intervals whose embedded error estimate exceeds the locally
/// apportioned tolerance. Throws quadrature_failure when the evaluation
/// budget runs out before the tolerance is met.
class adaptive_quadrature {
  public:
    explicit adaptive_quadrature(double tol = 1e-12, std::size_t max_evals = 100000)
        : tol_(tol), max_evals_(max_evals) {}

    template <class F>
    double integrate(F&& f, double a, double b) const {
        if (a == b) return 0.0;
        std::size_t evals = 0;
        return integrate_segment(f, a, b, tol_, evals, 0);
    }

  private:
    double tol_;
    std::size_t max_evals_;

    // 15-point Kronrod nodes/weights on [-1,1] with embedded 7-point Gauss rule.
    static constexpr std::array<double, 8> xk_ = {
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144838258730,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> wk_ = {
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714};
    static constexpr std::array<double, 4> wg_ = {
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327};

    template <class F>
    static void kronrod(F&& f, double a, double b, double& result, double& err) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        const double fc = f(c);
        double resk = wk_[7] * fc;
        double resg = wg_[3] * fc;
        for (int j = 0; j < 7; ++j) {
            const double x = h * xk_[static_cast<std::size_t>(j)];
            const double fsum = f(c - x) + f(c + x);
            resk += wk_[static_cast<std::size_t>(j)] * fsum;
            if (j % 2 == 1) resg += wg_[static_cast<std::size_t>(j / 2)] * fsum;
        }
        result = resk * h;
        err = std::abs((resk - resg) * h);
    }

    template <class F>
    double integrate_segment(F&& f, double a, double b, double tol, std::size_t& evals,
                             int depth) const {
        evals += 15;
        if (evals > max_evals_)
            throw quadrature_failure("adaptive quadrature: evaluation budget exhausted");
        double result = 0.0, err = 0.0;
        kronrod(f, a, b, result, err);
        if (err <= tol || err <= 1e-16 * std::abs(result)) return result;
        if (depth > 60)
            throw quadrature_failure("adaptive quadrature: maximum bisection depth reached");
        const double c = 0.5 * (a + b);
        return integrate_segment(f, a, c, 0.5 * tol, evals, depth + 1) +
               integrate_segment(f, c, b, 0.5 * tol, evals, depth + 1);
    }
};

/// Convenience wrapper with default tolerance.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12,
                 std::size_t max_evals = 100000) {
    return adaptive_quadrature(tol, max_evals).integrate(std::forward<F>(f), a, b);
}

} // namespace kklab
