#pragma once

#include <cmath>

#include "kklab/errors.hpp"
#include "kklab/grid.hpp"
#include "kklab/quadrature.hpp"

namespace kklab {

/// Normalization of the standard compactly supported smoothing kernel:
/// integral over [-1,1] of exp(1/(y^2-1)).
inline constexpr double smoothing_kernel_mass = 0.44399381616807944;

/// The unit-mass smoothing kernel on [-1,1]: exp(1/(y^2-1)) / mass.
inline double smoothing_kernel(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(1.0 / (y * y - 1.0)) / smoothing_kernel_mass;
}

/// Derivative of the kernel, analytic.
inline double smoothing_kernel_derivative(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    const double d = y * y - 1.0;
    return smoothing_kernel(y) * (-2.0 * y / (d * d));
}

/// Cumulative kernel integral from -1 to c, clipped to [0, 1] endpoints.
/// Used to evaluate convolutions of the kernel with step data in closed form.
inline double smoothing_kernel_cdf(double c) {
    if (c <= -1.0) return 0.0;
    if (c >= 1.0) return 1.0;
    static const double total =
        integrate([](double y) { return smoothing_kernel(y); }, -1.0, 1.0, 1e-14, 200000);
    const double part =
        integrate([](double y) { return smoothing_kernel(y); }, -1.0, c, 1e-14, 200000);
    return part / total;
}

/// Value at x of the step (lv for x < x0, rv otherwise) convolved with the
/// width-w kernel. Width zero returns the sharp step. Exact for lv == rv.
inline double mollified_step(double x, double lv, double rv, double x0, double w) {
    if (w <= 0.0) return x < x0 ? lv : rv;
    const double c = smoothing_kernel_cdf((x - x0) / w);
    return lv + (rv - lv) * c;
}

/// Samples a mollified multi-step profile at the cell centers of a grid.
/// `breaks` and `values` describe a piecewise-constant function with
/// values[j] on (breaks[j-1], breaks[j]); values has one more entry.
inline std::vector<double> mollify_piecewise(const std::vector<double>& breaks,
                                             const std::vector<double>& values,
                                             double width, const grid1d& g) {
    if (values.size() != breaks.size() + 1)
        throw validation_error("piecewise profile needs one more value than breakpoints");
    std::vector<double> out(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.center(i);
        double acc = values[0];
        for (std::size_t j = 0; j < breaks.size(); ++j) {
            // Superpose the jump contributions of each breakpoint.
            if (width <= 0.0) {
                if (x >= breaks[j]) acc += values[j + 1] - values[j];
            } else {
                acc += (values[j + 1] - values[j]) *
                       smoothing_kernel_cdf((x - breaks[j]) / width);
            }
        }
        out[i] = acc;
    }
    return out;
}

} // namespace kklab
