#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include <bric/controllers.hpp>
#include <bric/error_pipeline.hpp>
#include <bric/funnel.hpp>
#include <bric/plants.hpp>

namespace bric {

struct SimConfig {
    double t_end = 20.0;
    double h = 1e-3;
    int record_every = 10;
    double guard_margin = 1e-9;
    int max_substep_halvings = 12;
};

/// One recorded closed-loop sample. For PPC runs the eta/zeta columns hold
/// the normalized funnel coordinate s_k/rho, chi holds the logarithmic
/// transformed error, the integrators are zero, and `bound` holds rho(t).
struct TrajectoryRow {
    double t = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd z;
    Eigen::VectorXd e;      ///< stacked error blocks e_1 ... e_k
    Eigen::VectorXd s;      ///< stacked filtered errors s_1 ... s_k
    Eigen::VectorXd eta;
    Eigen::VectorXd zeta;
    Eigen::VectorXd chi;
    Eigen::VectorXd u;
    double d1_hat = 0.0;
    Eigen::VectorXd d2_hat;
    Eigen::VectorXd beta;
    Eigen::VectorXd bound;  ///< funnel radius phi(t), or rho(t) for PPC
};

struct Trajectory {
    PlantDims dims;
    std::vector<std::string> state_names;
    std::vector<TrajectoryRow> rows;

    bool empty() const { return rows.empty(); }
};

struct Envelope {
    double A = 1.0;
    double L = 0.5;
    double B = 0.5;
};

struct Metrics {
    double final_error = 0.0;  ///< ||e_1(t_end)||
    double effort = 0.0;       ///< integral of ||u||^2 dt (trapezoidal)
    double min_margin = 0.0;   ///< min over rows of 1 - max_j |zeta_j|
    double d1_drift = 0.0;     ///< |d1(t_end) - d1(0.75 t_end)|
    std::optional<bool> envelope_ok;
};

/// Classical fourth-order Runge-Kutta update. Throws NumericFailure if any
/// stage derivative is non-finite.
template <class Rhs>
Eigen::VectorXd rk4_step(Rhs&& rhs, const Eigen::VectorXd& y, double t, double h) {
    auto check = [](const Eigen::VectorXd& k, double stage_t) {
        if (!k.allFinite()) {
            throw NumericFailure("non-finite derivative at t = " + std::to_string(stage_t));
        }
    };
    const Eigen::VectorXd k1 = rhs(y, t);
    check(k1, t);
    const Eigen::VectorXd k2 = rhs(y + 0.5 * h * k1, t + 0.5 * h);
    check(k2, t + 0.5 * h);
    const Eigen::VectorXd k3 = rhs(y + 0.5 * h * k2, t + 0.5 * h);
    check(k3, t + 0.5 * h);
    const Eigen::VectorXd k4 = rhs(y + h * k3, t + h);
    check(k4, t + h);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Barrier-integral controller wiring for a closed-loop run.
struct BricController {
    BricGains gains;
    FunnelSpec funnel;
    double funnel_ratio_cap = 1e9;  ///< validate_funnel() steepness cap
    double d1_init = 0.0;
    Eigen::VectorXd d2_init;  ///< empty means zeros
};

/// Prescribed-performance baseline wiring. With rho0_auto the initial funnel
/// radius above the floor is resolved to ||s_k(0)|| at run start.
struct PpcController {
    PpcConfig cfg;
    double lambda = 1.0;
    bool rho0_auto = true;
};

using ControllerConfig = std::variant<BricController, PpcController>;

struct InitialState {
    Eigen::VectorXd x;
    Eigen::VectorXd z;
};

enum class RunStatus { success, funnel_violation, numeric_failure };

struct ViolationInfo {
    double t = 0.0;
    int channel = 0;
    double zeta = 0.0;
};

struct RunResult {
    RunStatus status = RunStatus::success;
    Trajectory trajectory;
    std::optional<ViolationInfo> violation;
    std::string message;

    bool ok() const { return status == RunStatus::success; }
};

/// Integrates the plant together with the controller integrators as one
/// augmented ODE. Every stage recomputes errors -> filtered stack ->
/// transform -> control from the stage state. Steps are aligned with the
/// plant's discontinuity times; a step that reaches the barrier is retried
/// at half the size up to max_substep_halvings times before the run aborts
/// with a violation report.
[[nodiscard]] RunResult run_closed_loop(const PlantModel& plant,
                                        const ControllerConfig& controller,
                                        const RegulationTarget& target, const SimConfig& sim,
                                        const InitialState& init);

/// Derived scalars of a completed trajectory; optionally also checks the
/// transient envelope ||e(t)|| <= A exp(-L t) + B.
[[nodiscard]] Metrics compute_metrics(const Trajectory& traj,
                                      std::optional<Envelope> envelope = std::nullopt);

}  // namespace bric
