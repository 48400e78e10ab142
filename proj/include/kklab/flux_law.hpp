#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "kklab/errors.hpp"
#include "kklab/quadrature.hpp"

namespace kklab {

/// A scalar coupling law phi(r) evaluated on r = u*v > 0, with two derivatives.
template <class L>
concept flux_law = requires(const L& law, double r) {
    { law.phi(r) } -> std::convertible_to<double>;
    { law.dphi(r) } -> std::convertible_to<double>;
    { law.d2phi(r) } -> std::convertible_to<double>;
    { law.name() } -> std::convertible_to<std::string_view>;
};

/// Speed of the second characteristic family: phi(r) + 2 r phi'(r).
template <flux_law Law>
double fast_speed(const Law& law, double r) {
    return law.phi(r) + 2.0 * r * law.dphi(r);
}

namespace detail {

/// Integrand of the power-entropy flux: -k s^(-k-1) * (phi(s) + 2 s phi'(s)).
template <flux_law Law>
double power_flux_integrand(const Law& law, double k, double s) {
    return -k * std::pow(s, -k - 1.0) * fast_speed(law, s);
}

} // namespace detail

/// phi(r) = r/2 (the thin-film coupling).
struct thin_film_law {
    double phi(double r) const { return 0.5 * r; }
    double dphi(double) const { return 0.5; }
    double d2phi(double) const { return 0.0; }
    std::string_view name() const { return "thin_film"; }

    /// Closed form of integral_{m^2}^{r} -k s^(-k-1) (phi + 2 s phi') ds.
    double power_flux_integral(double k, double m, double r) const {
        const double m2 = m * m;
        if (k == 1.0) return -1.5 * std::log(r / m2);
        return -(1.5 * k) * (std::pow(r, 1.0 - k) - std::pow(m2, 1.0 - k)) / (1.0 - k);
    }
};

/// phi(r) = ln(r), an alternative admissible coupling.
struct log_law {
    double phi(double r) const { return std::log(r); }
    double dphi(double r) const { return 1.0 / r; }
    double d2phi(double r) const { return -1.0 / (r * r); }
    std::string_view name() const { return "log"; }

    double power_flux_integral(double k, double m, double r) const {
        // integral of -k s^(-k-1) (ln s + 2) = [s^-k (ln s + 1/k + 2)]
        const auto anti = [k](double s) {
            return std::pow(s, -k) * (std::log(s) + 1.0 / k + 2.0);
        };
        return anti(r) - anti(m * m);
    }
};

/// phi(r) = 2 - 2/sqrt(r). Increasing, but the fast field degenerates
/// (its speed is constant), so wave-curve construction must reject it.
/// Shipped as the negative control for law validation.
struct sqrt_degenerate_law {
    double phi(double r) const { return 2.0 - 2.0 / std::sqrt(r); }
    double dphi(double r) const { return std::pow(r, -1.5); }
    double d2phi(double r) const { return -1.5 * std::pow(r, -2.5); }
    std::string_view name() const { return "sqrt_degenerate"; }
};

/// Type-erased law for runtime selection (CLI, config files).
class any_law {
  public:
    any_law() = default;

    template <flux_law Law>
    explicit any_law(const Law& law) : name_(law.name()) {
        phi_ = [law](double r) { return law.phi(r); };
        dphi_ = [law](double r) { return law.dphi(r); };
        d2phi_ = [law](double r) { return law.d2phi(r); };
        if constexpr (requires(const Law& l, double a, double b, double c) {
                          { l.power_flux_integral(a, b, c) } -> std::convertible_to<double>;
                      }) {
            integral_ = [law](double k, double m, double r) {
                return law.power_flux_integral(k, m, r);
            };
        }
    }

    double phi(double r) const { return phi_(r); }
    double dphi(double r) const { return dphi_(r); }
    double d2phi(double r) const { return d2phi_(r); }
    std::string_view name() const { return name_; }

    bool has_closed_flux_integral() const { return static_cast<bool>(integral_); }

    double power_flux_integral(double k, double m, double r) const {
        if (integral_) return integral_(k, m, r);
        const double lo = std::min(m * m, r), hi = std::max(m * m, r);
        const double sign = (r >= m * m) ? 1.0 : -1.0;
        return sign * integrate(
                          [&](double s) { return detail::power_flux_integrand(*this, k, s); },
                          lo, hi, 1e-12, 100000);
    }

  private:
    std::string name_;
    std::function<double(double)> phi_, dphi_, d2phi_;
    std::function<double(double, double, double)> integral_;
};

/// Built-in laws addressable by name.
inline any_law law_by_name(std::string_view name) {
    if (name == "thin_film") return any_law(thin_film_law{});
    if (name == "log") return any_law(log_law{});
    if (name == "sqrt_degenerate") return any_law(sqrt_degenerate_law{});
    throw validation_error("unknown flux law '" + std::string(name) +
                           "' (known: thin_film, log, sqrt_degenerate)");
}

inline std::vector<std::string> known_law_names() {
    return {"thin_film", "log", "sqrt_degenerate"};
}

/// Summary of the admissibility scan of a law over an r-interval.
struct law_validation_report {
    bool phi_increasing = false;
    /// True when 3 phi' + 2 r phi'' vanishes at most at isolated points.
    bool nonlinearity_isolated_zeros = false;
    int indicator_sign_changes = 0;
    double min_dphi = 0.0;
    double min_field_gap = 0.0; ///< min of (fast - slow) speed = 2 r phi'.
    bool pass() const { return phi_increasing && nonlinearity_isolated_zeros; }
};

/// Samples phi' > 0 and the zero set of 3 phi' + 2 r phi'' on [r_lo, r_hi].
///
/// An interval on which the indicator stays below tolerance at adjacent
/// samples is treated as a fat zero set and fails the scan.
template <flux_law Law>
law_validation_report validate_flux_law(const Law& law, double r_lo, double r_hi,
                                        int samples = 2048) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw validation_error("law scan needs 0 < r_lo < r_hi");
    if (samples < 8) throw validation_error("law scan needs at least 8 samples");
    law_validation_report rep;
    rep.phi_increasing = true;
    rep.nonlinearity_isolated_zeros = true;
    rep.min_dphi = std::numeric_limits<double>::infinity();
    rep.min_field_gap = std::numeric_limits<double>::infinity();
    const double tol = 1e-10;
    double prev_indicator = 0.0;
    bool prev_small = false;
    for (int i = 0; i < samples; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (samples - 1);
        const double dp = law.dphi(r);
        rep.min_dphi = std::min(rep.min_dphi, dp);
        rep.min_field_gap = std::min(rep.min_field_gap, 2.0 * r * dp);
        if (!(dp > 0.0)) rep.phi_increasing = false;
        const double ind = 3.0 * dp + 2.0 * r * law.d2phi(r);
        const bool small = std::abs(ind) <= tol;
        if (small && prev_small) rep.nonlinearity_isolated_zeros = false;
        if (i > 0 && !small && !prev_small && (ind > 0) != (prev_indicator > 0))
            ++rep.indicator_sign_changes;
        prev_indicator = ind;
        prev_small = small;
    }
    return rep;
}

} // namespace kklab
