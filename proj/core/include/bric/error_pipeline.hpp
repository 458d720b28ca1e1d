#pragma once

#include <vector>

#include <Eigen/Core>

#include <bric/transforms.hpp>

namespace bric {

/// Regulation setpoint. Only the position block is free; the derivative
/// blocks of the target are structurally zero.
struct RegulationTarget {
    Eigen::VectorXd x1_d;
};

/// Per-channel transformed quantities at one instant: the combined error
/// s_k, its squashed image eta, the funnel-normalized zeta, the barrier
/// image chi, and the diagonal slope entries of the two maps.
struct TransformedState {
    Eigen::VectorXd s_k;
    Eigen::VectorXd eta;
    Eigen::VectorXd zeta;
    Eigen::VectorXd chi;
    Eigen::VectorXd r_xi;  ///< squash slopes, in (0, 1/sqrt(kappa)]
    Eigen::VectorXd r_t;   ///< barrier slopes, >= 1
};

/// Splits the chain state x (k blocks of n) into tracking errors:
/// e_1 = x_1 - x1_d and e_i = x_i for i >= 2.
[[nodiscard]] std::vector<Eigen::VectorXd> compute_errors(const Eigen::VectorXd& x,
                                                          const RegulationTarget& target);

/// Filtered-error stack: s_i = sum_{l=0}^{i-1} C(i-1,l) lambda^l e_{i-l}.
/// s_1 = e_1; along trajectories the stack satisfies s_{i+1} = s_i' + lambda s_i.
[[nodiscard]] std::vector<Eigen::VectorXd> filtered_errors(const std::vector<Eigen::VectorXd>& e,
                                                           double lambda);

/// Chains squash -> funnel scaling -> barrier for every channel.
/// Throws FunnelViolation (with the offending channel) the moment any
/// |zeta_j| reaches 1 - guard_margin; the margin keeps the barrier and its
/// slope representable and gives the engine a clean diagnostic instead of
/// numerical blow-up.
[[nodiscard]] TransformedState transform(const Eigen::VectorXd& s_k,
                                         const Eigen::VectorXd& beta,
                                         SquashParams p,
                                         double guard_margin = 1e-9);

}  // namespace bric
