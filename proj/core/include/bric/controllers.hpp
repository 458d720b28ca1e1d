#pragma once

#include <Eigen/Core>

#include <bric/error_pipeline.hpp>

namespace bric {

/// Gains of the barrier-integral control law. Defaults are the benchmark
/// values; lambda is the filtered-error pole (not part of the published
/// setup, see the config docs).
struct BricGains {
    double lambda = 1.0;
    double kappa = 20.0;
    double mu_g = 0.1;
    double mu_d1 = 10.0;
    double mu_d2 = 10.0;
};

/// Adaptation integrators. d1_hat grows with the squared barrier pressure
/// and is nondecreasing along any trajectory; d2_hat converges to the
/// steady-state control offset of the (unknown) plant.
struct BricState {
    double d1_hat = 0.0;
    Eigen::VectorXd d2_hat;
};

struct BricCommand {
    Eigen::VectorXd u;
    double d1_dot = 0.0;
    Eigen::VectorXd d2_dot;
};

/// The static feedback plus integrator derivatives:
///   u      = -(mu_g + d1_hat) * beta .* r_xi .* r_t .* chi - d2_hat
///   d1_dot =  mu_d1 * || r_t .* chi ||^2
///   d2_dot =  mu_d2 * beta .* r_xi .* r_t .* chi
[[nodiscard]] BricCommand bric_control(const TransformedState& ts,
                                       const Eigen::VectorXd& beta,
                                       const BricState& st,
                                       const BricGains& g);

/// Prescribed-performance baseline configuration. rho0 is the initial funnel
/// radius above the floor; scenario setup may resolve it from ||s_k(0)||.
struct PpcConfig {
    double k_ppc = 0.1;
    double rho0 = 1.0;
    double rho_rate = 0.5;
    double rho_floor = 0.5;
};

/// Funnel radius rho_j(t) = rho0 * exp(-rho_rate * t) + rho_floor,
/// identical on all n channels.
[[nodiscard]] Eigen::VectorXd ppc_rho(const PpcConfig& cfg, int n, double t);

/// Logarithmic prescribed-performance law. With xi_j = s_kj / rho_j:
///   eps_j = ln((1+xi_j)/(1-xi_j)),  r_j = 2/(rho_j (1-xi_j^2)),
///   u_j   = -k_ppc * r_j * eps_j.
/// Throws FunnelViolation when any |xi_j| >= 1.
[[nodiscard]] Eigen::VectorXd ppc_control(const Eigen::VectorXd& s_k,
                                          const Eigen::VectorXd& rho,
                                          const PpcConfig& cfg);

}  // namespace bric
