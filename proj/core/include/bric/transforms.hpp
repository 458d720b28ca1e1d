#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <bric/errors.hpp>

namespace bric {

/// Normalizing coefficient of the squashing map. Larger kappa shrinks the
/// initial squashed error (and with it the initial control effort).
struct SquashParams {
    double kappa = 20.0;
};

/// Bounds of the asymmetric barrier: zeta is confined to (-lower, upper).
struct AsymBounds {
    double lower = 1.0;
    double upper = 1.0;
};

struct SquashResult {
    double eta;    ///< value in (-1, 1)
    double deriv;  ///< slope, in (0, 1/sqrt(kappa)]
};

struct BarrierResult {
    double chi;    ///< transformed error, unbounded
    double deriv;  ///< slope, always >= 1
};

namespace detail {
inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}
inline void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}
}  // namespace detail

/// Squashing map s -> s / sqrt(s^2 + kappa), together with its slope
/// kappa / (s^2 + kappa)^(3/2). Odd, strictly increasing, onto (-1, 1).
[[nodiscard]] inline SquashResult squash(double s, SquashParams p) {
    detail::require_finite(s, "squash input");
    detail::require_positive(p.kappa, "kappa");
    if (std::abs(s) > 1e150) {
        // s^2 would overflow; the slope underflows to zero gradually.
        const double deriv = ((p.kappa / std::abs(s)) / s) / s;
        return {std::copysign(1.0, s), deriv};
    }
    const double q2 = s * s + p.kappa;
    const double q = std::sqrt(q2);
    return {s / q, p.kappa / (q2 * q)};
}

/// Inverse of squash: eta -> eta * sqrt(kappa) / sqrt(1 - eta^2).
[[nodiscard]] inline double squash_inverse(double eta, SquashParams p) {
    detail::require_positive(p.kappa, "kappa");
    if (!std::isfinite(eta) || std::abs(eta) >= 1.0) {
        throw std::domain_error("squash_inverse requires |eta| < 1");
    }
    return eta * std::sqrt(p.kappa) / std::sqrt((1.0 - eta) * (1.0 + eta));
}

/// Funnel gain evaluated on the reciprocal funnel value psi = 1/phi:
/// beta = sqrt(psi^2 + 1). Equals 1 exactly at psi = 0 (t = 0, infinite
/// funnel) and grows monotonically as the funnel shrinks.
[[nodiscard]] inline double funnel_gain(double psi) {
    if (!std::isfinite(psi) || psi < 0.0) {
        throw std::domain_error("funnel_gain requires psi >= 0 and finite");
    }
    return std::sqrt(psi * psi + 1.0);
}

/// Reciprocal barrier zeta -> zeta / (1 - zeta^2) with slope
/// (1 + zeta^2) / (1 - zeta^2)^2 >= 1. Blows up at the domain edges, which
/// is what converts the funnel constraint into unbounded feedback pressure.
[[nodiscard]] inline BarrierResult barrier(double zeta) {
    if (!std::isfinite(zeta) || std::abs(zeta) >= 1.0) {
        throw FunnelViolation(0, zeta);
    }
    const double one_minus = (1.0 - zeta) * (1.0 + zeta);
    return {zeta / one_minus, (1.0 + zeta * zeta) / (one_minus * one_minus)};
}

/// Inverse of the barrier. Algebraically (sqrt(1+4chi^2)-1)/(2chi); evaluated
/// as 2chi/(1+sqrt(1+4chi^2)) so the removable singularity at chi = 0 and the
/// cancellation for small chi disappear.
[[nodiscard]] inline double barrier_inverse(double chi) {
    detail::require_finite(chi, "barrier_inverse input");
    return 2.0 * chi / (1.0 + std::hypot(1.0, 2.0 * chi));
}

/// Asymmetric barrier of a funnel with different upper/lower margins:
/// zeta / ((1 - zeta/upper) * (1 + zeta/lower)) on (-lower, upper).
/// Reduces to barrier() when both bounds are 1.
[[nodiscard]] inline double barrier_asym(double zeta, const AsymBounds& b) {
    detail::require_positive(b.lower, "lower bound");
    detail::require_positive(b.upper, "upper bound");
    if (!std::isfinite(zeta) || zeta >= b.upper || zeta <= -b.lower) {
        throw FunnelViolation(0, zeta);
    }
    return zeta / ((1.0 - zeta / b.upper) * (1.0 + zeta / b.lower));
}

/// Inverse of the asymmetric barrier. chi = z/((1-z/U)(1+z/L)) rearranges to
/// the quadratic (chi/(U L)) z^2 + (1 - chi (1/L - 1/U)) z - chi = 0; the
/// root inside (-L, U) is picked via the cancellation-free companion form.
[[nodiscard]] inline double barrier_asym_inverse(double chi, const AsymBounds& b) {
    detail::require_positive(b.lower, "lower bound");
    detail::require_positive(b.upper, "upper bound");
    detail::require_finite(chi, "barrier_asym_inverse input");
    const double a = chi / (b.upper * b.lower);
    const double lin = 1.0 - chi * (1.0 / b.lower - 1.0 / b.upper);
    if (a == 0.0) {
        return 0.0;  // chi = 0 maps to the origin
    }
    const double disc = std::sqrt(lin * lin + 4.0 * a * chi);
    const double q = -0.5 * (lin + std::copysign(disc, lin));
    const double root1 = q / a;
    const double root2 = -chi / q;
    return (root1 > -b.lower && root1 < b.upper) ? root1 : root2;
}

}  // namespace bric
