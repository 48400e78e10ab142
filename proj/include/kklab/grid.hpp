#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "kklab/errors.hpp"
#include "kklab/model.hpp"

namespace kklab {

/// Uniform cell-centered 1D mesh on [x_min, x_max].
struct grid1d {
    double x_min = -5.0;
    double x_max = 5.0;
    std::size_t n = 400;

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }
    double center(std::size_t i) const {
        return x_min + (static_cast<double>(i) + 0.5) * dx();
    }
    double face(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
    double half_width() const { return 0.5 * (x_max - x_min); }

    std::vector<double> centers() const {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) xs[i] = center(i);
        return xs;
    }

    void validate() const {
        if (!(x_max > x_min)) throw validation_error("grid: x_max must exceed x_min");
        if (n < 8) throw validation_error("grid: need at least 8 cells");
    }
};

enum class boundary_kind { outflow, periodic };

/// Cell values of the conserved pair on a grid.
struct field_pair {
    std::vector<double> u, v;

    field_pair() = default;
    explicit field_pair(std::size_t n) : u(n), v(n) {}

    std::size_t size() const { return u.size(); }
    state at(std::size_t i) const { return {u[i], v[i]}; }

    double r(std::size_t i) const { return u[i] * v[i]; }
    double xi(std::size_t i) const { return u[i] / v[i]; }
};

/// Cell values in the diagonal coordinates theta = sqrt(uv), xi = u/v.
struct invariant_fields {
    std::vector<double> theta, xi;

    invariant_fields() = default;
    explicit invariant_fields(std::size_t n) : theta(n), xi(n) {}

    std::size_t size() const { return theta.size(); }
};

inline invariant_fields to_invariant_fields(const field_pair& fp) {
    invariant_fields w(fp.size());
    for (std::size_t i = 0; i < fp.size(); ++i) {
        w.theta[i] = std::sqrt(fp.u[i] * fp.v[i]);
        w.xi[i] = fp.u[i] / fp.v[i];
    }
    return w;
}

inline field_pair to_conserved_fields(const invariant_fields& w) {
    field_pair fp(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double s = std::sqrt(w.xi[i]);
        fp.u[i] = w.theta[i] * s;
        fp.v[i] = w.theta[i] / s;
    }
    return fp;
}

namespace detail {

/// Index of the neighbor to the left/right of cell i under a boundary rule.
inline std::size_t left_of(std::size_t i, std::size_t n, boundary_kind bc) {
    if (i > 0) return i - 1;
    return bc == boundary_kind::periodic ? n - 1 : 0;
}
inline std::size_t right_of(std::size_t i, std::size_t n, boundary_kind bc) {
    if (i + 1 < n) return i + 1;
    return bc == boundary_kind::periodic ? 0 : n - 1;
}

} // namespace detail

} // namespace kklab
