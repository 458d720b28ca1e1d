#include <bric/funnel.hpp>

#include <cmath>
#include <stdexcept>

namespace bric {

namespace {

const FunnelChannel& channel_at(const FunnelSpec& spec, int j) {
    if (j < 0 || j >= spec.size()) {
        throw std::out_of_range("funnel channel index " + std::to_string(j) +
                                " out of range (n = " + std::to_string(spec.size()) + ")");
    }
    return spec.channels[static_cast<size_t>(j)];
}

}  // namespace

double phi_reciprocal(const FunnelSpec& spec, int j, double t) {
    const FunnelChannel& ch = channel_at(spec, j);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("phi_reciprocal requires t >= 0");
    }
    return t / (std::exp(-ch.rate * t) + ch.floor * t);
}

double phi_value(const FunnelSpec& spec, int j, double t) {
    const FunnelChannel& ch = channel_at(spec, j);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("phi_value requires t >= 0");
    }
    return std::exp(-ch.rate * t) / t + ch.floor;
}

Eigen::VectorXd beta(const FunnelSpec& spec, double t) {
    Eigen::VectorXd out(spec.size());
    for (int j = 0; j < spec.size(); ++j) {
        out[j] = funnel_gain(phi_reciprocal(spec, j, t));
    }
    return out;
}

FunnelDiagnostics validate_funnel(const FunnelSpec& spec, double ratio_cap) {
    FunnelDiagnostics diag;
    auto fail = [&diag](const std::string& msg) {
        diag.ok = false;
        diag.issues.push_back(msg);
    };

    if (spec.channels.empty()) {
        fail("funnel must have at least one channel");
        return diag;
    }
    for (int j = 0; j < spec.size(); ++j) {
        const FunnelChannel& ch = spec.channels[static_cast<size_t>(j)];
        if (!(ch.rate > 0.0) || !std::isfinite(ch.rate)) {
            fail("channel " + std::to_string(j) + ": rate must be positive");
        }
        if (!(ch.floor > 0.0) || !std::isfinite(ch.floor)) {
            fail("channel " + std::to_string(j) + ": floor must be positive");
        }
    }
    if (!diag.ok) {
        return diag;  // ratio scan is meaningless with invalid parameters
    }

    // Scan |phi_dot / phi^3| on a log grid; phi_dot by central differences.
    constexpr int kGridPoints = 200;
    const double t_lo = 1e-6;
    const double t_hi = 100.0;
    const double log_step = std::log(t_hi / t_lo) / (kGridPoints - 1);
    for (int j = 0; j < spec.size(); ++j) {
        double worst = 0.0;
        double worst_t = t_lo;
        for (int i = 0; i < kGridPoints; ++i) {
            const double t = t_lo * std::exp(log_step * i);
            const double dt = 1e-4 * t;
            const double phi_m = phi_value(spec, j, t - dt);
            const double phi_p = phi_value(spec, j, t + dt);
            const double phi = phi_value(spec, j, t);
            const double phi_dot = (phi_p - phi_m) / (2.0 * dt);
            const double ratio = std::abs(phi_dot / (phi * phi * phi));
            if (!std::isfinite(ratio)) {
                fail("channel " + std::to_string(j) + ": |phi_dot/phi^3| not finite at t = " +
                     std::to_string(t));
                break;
            }
            if (ratio > worst) {
                worst = ratio;
                worst_t = t;
            }
        }
        if (worst > ratio_cap) {
            fail("channel " + std::to_string(j) + ": |phi_dot/phi^3| = " + std::to_string(worst) +
                 " at t = " + std::to_string(worst_t) + " exceeds cap " + std::to_string(ratio_cap));
        }
    }
    return diag;
}

}  // namespace bric
