#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include <bric/transforms.hpp>

namespace bric {

/// One funnel channel: phi(t) = (1/t) * exp(-rate * t) + floor.
/// The funnel starts at infinity (so any initial error is admissible) and
/// decays exponentially to the floor. Only this family is built in; other
/// shapes would need their own reciprocal evaluation and steepness check,
/// which is the extension point if one is ever needed.
struct FunnelChannel {
    double rate = 0.5;   ///< decay rate [1/s]
    double floor = 0.5;  ///< final funnel radius [error units]
};

/// Per-channel funnel parameters. Plain data so that invalid configurations
/// can be constructed and then diagnosed by validate_funnel().
struct FunnelSpec {
    std::vector<FunnelChannel> channels;

    int size() const { return static_cast<int>(channels.size()); }
};

/// Reciprocal funnel value psi_j(t) = 1/phi_j(t) = t / (exp(-rate*t) + floor*t).
/// Finite and smooth everywhere including t = 0, where it is exactly 0;
/// strictly increasing towards 1/floor.
[[nodiscard]] double phi_reciprocal(const FunnelSpec& spec, int j, double t);

/// Direct funnel value phi_j(t). Returns +infinity at t = 0 by construction.
[[nodiscard]] double phi_value(const FunnelSpec& spec, int j, double t);

/// Funnel gains beta_j(t) = funnel_gain(psi_j(t)) for all channels.
/// beta_j(0) = 1 exactly; nondecreasing in t for this funnel family.
[[nodiscard]] Eigen::VectorXd beta(const FunnelSpec& spec, double t);

struct FunnelDiagnostics {
    bool ok = true;
    std::vector<std::string> issues;
};

/// Checks that every rate and floor is positive and that the barrier
/// steepness ratio |phi_dot / phi^3| stays below ratio_cap on a log-spaced
/// time grid in [1e-6, 100] (phi_dot by central differences). The ratio must
/// be bounded for the funnel-confinement guarantees to apply; for this
/// funnel family it tends to 0 at both ends of the grid.
[[nodiscard]] FunnelDiagnostics validate_funnel(const FunnelSpec& spec,
                                                double ratio_cap = 1e9);

}  // namespace bric
