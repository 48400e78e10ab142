#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "kklab/errors.hpp"
#include "kklab/flux_law.hpp"
#include "kklab/model.hpp"

namespace kklab {

/// Symmetric 2x2 matrix.
struct sym2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a12; }
    double min_eig() const {
        const double t = trace(), d = det();
        const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d));
        return 0.5 * (t - disc);
    }
    sym2 operator+(const sym2& o) const { return {a11 + o.a11, a12 + o.a12, a22 + o.a22}; }
    std::array<double, 2> apply(const std::array<double, 2>& w) const {
        return {a11 * w[0] + a12 * w[1], a12 * w[0] + a22 * w[1]};
    }
};

/// The two-parameter convex entropy family
///   E = (uv)^(-k) + sqrt(uv) (u/v)^p - m^(-2k) - m,   k > 0, p >= 1/2,
/// with matching flux Q built from the fast-field speed.
template <flux_law Law>
class entropy_pair {
  public:
    entropy_pair(Law law, double k, double p, double m)
        : law_(std::move(law)), k_(k), p_(p), m_(m) {
        if (!(k > 0.0)) throw validation_error("entropy parameter k must be positive");
        if (!(p >= 0.5)) throw validation_error("entropy parameter p must be >= 1/2");
        if (!(m > 0.0)) throw validation_error("entropy floor m must be positive");
        // Constants use the same expression shapes as the variable terms so
        // that E(m, m) evaluates to exactly zero.
        c_power_ = std::pow(m * m, -k);
        c_ratio_ = std::sqrt(m * m) * std::pow(m / m, p);
    }

    double k() const { return k_; }
    double p() const { return p_; }
    double m() const { return m_; }
    const Law& law() const { return law_; }

    double E(const state& s) const {
        const double r = s.u * s.v;
        return (std::pow(r, -k_) - c_power_) +
               (std::sqrt(r) * std::pow(s.u / s.v, p_) - c_ratio_);
    }

    double Q(const state& s) const {
        const double r = s.u * s.v;
        return power_flux_integral(r) +
               law_.phi(r) * std::sqrt(r) * std::pow(s.u / s.v, p_);
    }

    /// integral_{m^2}^{r} -k s^(-k-1) (phi(s) + 2 s phi'(s)) ds, closed form
    /// when the law provides one, adaptive quadrature otherwise.
    double power_flux_integral(double r) const {
        if constexpr (requires(const Law& l, double a, double b, double c) {
                          { l.power_flux_integral(a, b, c) } -> std::convertible_to<double>;
                      }) {
            return law_.power_flux_integral(k_, m_, r);
        } else {
            const double m2 = m_ * m_;
            const double lo = std::min(m2, r), hi = std::max(m2, r);
            const double sign = (r >= m2) ? 1.0 : -1.0;
            return sign * integrate(
                              [&](double s) { return detail::power_flux_integrand(law_, k_, s); },
                              lo, hi, 1e-12, 100000);
        }
    }

    std::array<double, 2> gradient(const state& s) const {
        const double r = s.u * s.v;
        const double rk1 = std::pow(r, -k_ - 1.0);
        return {-k_ * rk1 * s.v + (p_ + 0.5) * std::pow(s.u, p_ - 0.5) * std::pow(s.v, 0.5 - p_),
                -k_ * rk1 * s.u + (0.5 - p_) * std::pow(s.u, p_ + 0.5) * std::pow(s.v, -0.5 - p_)};
    }

    /// Hessian of the (uv)^(-k) term. Positive definite on u, v > 0.
    sym2 hessian_power_part(const state& s) const {
        const double r = s.u * s.v;
        const double rk2 = std::pow(r, -k_ - 2.0);
        const double diag = k_ * (k_ + 1.0) * rk2;
        return {diag * s.v * s.v, k_ * k_ * std::pow(r, -k_ - 1.0), diag * s.u * s.u};
    }

    /// Hessian of the sqrt(uv)(u/v)^p term. Positive semidefinite (rank one).
    sym2 hessian_ratio_part(const state& s) const {
        const double c = (p_ * p_ - 0.25) * std::pow(s.u, p_ - 1.5) * std::pow(s.v, -1.5 - p_);
        return {c * s.v * s.v, -c * s.u * s.v, c * s.u * s.u};
    }

    sym2 hessian(const state& s) const {
        return hessian_power_part(s) + hessian_ratio_part(s);
    }

    /// Coefficient of (r_x)^2 in the viscous dissipation rate density:
    /// k (2k+1) r^(-k-2).
    double dissipation_coefficient(double r) const {
        return k_ * (2.0 * k_ + 1.0) * std::pow(r, -k_ - 2.0);
    }

    /// max-norm of grad(E)^T dF - grad(Q)^T with grad(Q) by central differences;
    /// an independent check that Q matches E through the flux.
    double compatibility_residual(const state& s, double h = 1e-5) const {
        const auto g = gradient(s);
        const auto J = flux_jacobian(law_, s);
        const double lhs0 = g[0] * J[0] + g[1] * J[2];
        const double lhs1 = g[0] * J[1] + g[1] * J[3];
        const double dQu = (Q({s.u + h, s.v}) - Q({s.u - h, s.v})) / (2.0 * h);
        const double dQv = (Q({s.u, s.v + h}) - Q({s.u, s.v - h})) / (2.0 * h);
        return std::max(std::abs(lhs0 - dQu), std::abs(lhs1 - dQv));
    }

  private:
    Law law_;
    double k_, p_, m_;
    double c_power_, c_ratio_;
};

/// A user-supplied candidate entropy in separated form
///   E = Psi(r) + sqrt(r) Theta(xi),
/// with the convexity conditions it must satisfy on a box.
struct general_pair_spec {
    std::function<double(double)> Psi, dPsi, d2Psi;
    std::function<double(double)> Theta, dTheta, d2Theta;

    /// sqrt(r)(4 xi^2 Theta'' + 4 xi Theta' - Theta) - 2 r Psi' ; must be > 0.
    double form_mixed(double r, double xi) const {
        return std::sqrt(r) * theta_combination(xi) - 2.0 * r * dPsi(r);
    }
    /// 2 r (2 r Psi'' + Psi') ; must be > 0.
    double form_power(double r) const { return 2.0 * r * (2.0 * r * d2Psi(r) + dPsi(r)); }
    /// 4 xi^2 Theta'' + 4 xi Theta' - Theta ; must be >= 0.
    double theta_combination(double xi) const {
        return 4.0 * xi * xi * d2Theta(xi) + 4.0 * xi * dTheta(xi) - Theta(xi);
    }
};

struct general_pair_report {
    bool psi_decreasing = true;       // Psi' < 0
    bool psi_convex = true;           // Psi'' > 0
    bool psi_power_form = true;       // 2 r Psi'' + Psi' > 0
    bool theta_nonnegative_form = true; // 4 xi^2 Theta'' + 4 xi Theta' - Theta >= 0
    bool quadratic_forms_positive = true;
    bool pass() const {
        return psi_decreasing && psi_convex && psi_power_form && theta_nonnegative_form &&
               quadratic_forms_positive;
    }
};

/// Samples the defining conditions of a separated entropy candidate on
/// [r_lo, r_hi] x [xi_lo, xi_hi].
inline general_pair_report check_general_pair(const general_pair_spec& gp, double r_lo,
                                              double r_hi, double xi_lo, double xi_hi,
                                              int samples = 64) {
    if (!(r_lo > 0.0 && r_hi > r_lo && xi_lo > 0.0 && xi_hi > xi_lo))
        throw validation_error("general pair scan needs positive, ordered bounds");
    general_pair_report rep;
    for (int i = 0; i < samples; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (samples - 1);
        if (!(gp.dPsi(r) < 0.0)) rep.psi_decreasing = false;
        if (!(gp.d2Psi(r) > 0.0)) rep.psi_convex = false;
        if (!(gp.form_power(r) > 0.0)) rep.psi_power_form = false;
        for (int j = 0; j < samples; ++j) {
            const double xi = xi_lo + (xi_hi - xi_lo) * j / (samples - 1);
            // >= 0 with rounding slack: the boundary exponent p = 1/2 makes
            // this combination vanish identically, up to cancellation noise.
            const double theta_slack = 1e-12 * (1.0 + std::abs(gp.Theta(xi)));
            if (i == 0 && !(gp.theta_combination(xi) >= -theta_slack))
                rep.theta_nonnegative_form = false;
            if (!(gp.form_mixed(r, xi) > 0.0)) rep.quadratic_forms_positive = false;
        }
    }
    return rep;
}

/// The separated form of the built-in family, for feeding the general checker.
inline general_pair_spec power_ratio_pair_spec(double k, double p) {
    general_pair_spec gp;
    gp.Psi = [k](double r) { return std::pow(r, -k); };
    gp.dPsi = [k](double r) { return -k * std::pow(r, -k - 1.0); };
    gp.d2Psi = [k](double r) { return k * (k + 1.0) * std::pow(r, -k - 2.0); };
    gp.Theta = [p](double xi) { return std::pow(xi, p); };
    gp.dTheta = [p](double xi) { return p * std::pow(xi, p - 1.0); };
    gp.d2Theta = [p](double xi) { return p * (p - 1.0) * std::pow(xi, p - 2.0); };
    return gp;
}

} // namespace kklab
