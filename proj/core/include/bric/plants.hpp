#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace bric {

/// Chain dimensions: order >= 2 blocks of `channels` states plus `internal`
/// unmeasured states.
struct PlantDims {
    int order = 2;     ///< k
    int channels = 1;  ///< n
    int internal = 0;  ///< n_z
};

/// Right-hand-side contract of a chain-structured control-affine plant.
/// The chain rows x_i' = x_{i+1} are filled by the base class so they hold
/// bitwise for every model; concrete plants supply the top-row acceleration
/// and the internal dynamics.
class PlantModel {
public:
    virtual ~PlantModel() = default;

    virtual PlantDims dims() const = 0;

    /// Evaluates (x_dot, z_dot) at (x, z, u, t). Throws on dimension
    /// mismatch or non-finite input.
    void rhs(const Eigen::VectorXd& x, const Eigen::VectorXd& z, const Eigen::VectorXd& u,
             double t, Eigen::VectorXd& x_dot, Eigen::VectorXd& z_dot) const;

    /// The control-effectiveness matrix G(x, z, t) of the top chain row.
    /// Benchmark models expose it explicitly so the controllability
    /// condition (G + G^T positive definite) can be spot-checked.
    virtual Eigen::MatrixXd control_matrix(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                                           double t) const = 0;

    /// Column names of x for trajectory files; defaults to x1_1 ... xk_n.
    virtual std::vector<std::string> state_names() const;

    /// Times in (0, inf) where the rhs is discontinuous in t; the engine
    /// aligns integration step boundaries with these.
    virtual std::vector<double> discontinuity_times() const { return {}; }

protected:
    /// Fills the top chain row derivative (size n) and z_dot (size n_z).
    virtual void top_dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                              const Eigen::VectorXd& u, double t,
                              Eigen::Ref<Eigen::VectorXd> xk_dot,
                              Eigen::Ref<Eigen::VectorXd> z_dot) const = 0;
};

/// Oracle plant: x1' = x2, x2' = f_d + u with constant drift and identity
/// control matrix. Every structural assumption of the control design holds
/// exactly, so the closed-loop conclusions are sharply testable against it.
class DoubleIntegratorPlant final : public PlantModel {
public:
    explicit DoubleIntegratorPlant(Eigen::VectorXd f_d);

    PlantDims dims() const override;
    Eigen::MatrixXd control_matrix(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                   double) const override;
    const Eigen::VectorXd& drift() const { return f_d_; }

protected:
    void top_dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                      const Eigen::VectorXd& u, double t,
                      Eigen::Ref<Eigen::VectorXd> xk_dot,
                      Eigen::Ref<Eigen::VectorXd> z_dot) const override;

private:
    Eigen::VectorXd f_d_;
};

/// Physical parameters of the two spring-and-damper-coupled inverted
/// pendulums with LuGre joint friction.
struct PendulumParams {
    double J1 = 0.5;           ///< inertia [kg m^2]
    double J2 = 0.625;
    double m1 = 2.0;           ///< mass [kg]
    double m2 = 2.5;
    double r_c = 0.5;          ///< pendulum length [m]
    double d_c = 0.5;          ///< base distance [m]
    double l_c = 0.5;          ///< spring rest length [m]
    double k_c = 150.0;        ///< spring stiffness [N/m]
    double b_c = 1.0;          ///< damper coefficient [N s/m]
    double g = 9.81;           ///< gravity [m/s^2]
    double sigma0 = 1.0;       ///< LuGre bristle stiffness
    double sigma1 = 1.0;       ///< LuGre bristle damping
    double sigma2 = 1.0;       ///< viscous coefficient
    double theta_dot_s = 0.1;  ///< Stribeck velocity [rad/s]
    double T_s = 2.0;          ///< static friction level
    double T_c = 1.0;          ///< Coulomb friction level
    /// Multiply the Stribeck fraction by the bristle state (the textbook
    /// LuGre form) instead of the plain velocity-only fraction.
    bool stribeck_uses_bristle = false;
};

/// Scenario switches of the benchmark: the temporary motor failure window
/// and the additive torque disturbance.
struct ScenarioFlags {
    bool motor_failure = true;
    double failure_start = 2.0;
    double failure_end = 10.0;   ///< half-open window [start, end)
    double failure_factor = 0.5;
    bool disturbance = false;
    /// Apply the disturbance after dividing by the inertia instead of on
    /// the torque balance.
    bool disturbance_after_inertia = false;
};

struct CouplingGeometry {
    double x_c = 0.0;       ///< spring end-point distance
    double x_c_dot = 0.0;   ///< its analytic time derivative
    double theta_c = 0.0;   ///< direction angle of the coupling force
    double f_c = 0.0;       ///< spring + damper force
    bool clamped = false;   ///< radicand fell below zero and was clamped
};

struct LugreResult {
    double tau_dot = 0.0;  ///< bristle state derivative
    double torque = 0.0;   ///< friction torque
};

/// Spring/damper coupling geometry between the two pendulum tips.
[[nodiscard]] CouplingGeometry coupling_geometry(const Eigen::Vector2d& theta,
                                                 const Eigen::Vector2d& theta_dot,
                                                 const PendulumParams& p);

/// LuGre friction at one joint: bristle derivative and friction torque
/// T = sigma0 tau + sigma1 tau_dot + sigma2 theta_dot.
[[nodiscard]] LugreResult lugre_friction(double theta_dot, double tau, const PendulumParams& p);

/// Motor effectiveness factor: failure_factor inside the failure window,
/// 1 otherwise.
[[nodiscard]] double motor_factor(double t, const ScenarioFlags& flags);

/// Additive torque disturbance 5[sin(2t - pi/4), cos(t - pi/6)].
[[nodiscard]] Eigen::Vector2d coupling_disturbance(double t);

/// The coupled-pendulum benchmark: x = [theta1, theta2, omega1, omega2],
/// z = [tau1, tau2] (friction bristle states), u = joint torques.
class PendulumPlant final : public PlantModel {
public:
    explicit PendulumPlant(PendulumParams params = {}, ScenarioFlags flags = {});

    PlantDims dims() const override;
    Eigen::MatrixXd control_matrix(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                                   double t) const override;
    std::vector<std::string> state_names() const override;
    std::vector<double> discontinuity_times() const override;

    const PendulumParams& params() const { return params_; }
    const ScenarioFlags& flags() const { return flags_; }
    /// Number of times the coupling radicand needed clamping so far.
    long radicand_clamps() const { return clamp_count_.load(); }

protected:
    void top_dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                      const Eigen::VectorXd& u, double t,
                      Eigen::Ref<Eigen::VectorXd> xk_dot,
                      Eigen::Ref<Eigen::VectorXd> z_dot) const override;

private:
    Eigen::Matrix2d input_matrix(const Eigen::Vector2d& theta, double t) const;

    PendulumParams params_;
    ScenarioFlags flags_;
    mutable std::atomic<long> clamp_count_{0};
};

struct ProbeReport {
    bool ok = false;
    double min_eigenvalue = 0.0;
    Eigen::VectorXd at_state;
    double at_time = 0.0;
};

/// Spot-checks positive definiteness of G + G^T over the given states and
/// times, reporting the smallest eigenvalue found and where it occurred.
[[nodiscard]] ProbeReport assumption_probe(const PlantModel& model,
                                           const std::vector<Eigen::VectorXd>& states,
                                           const std::vector<double>& times);

}  // namespace bric
