#include <bric/plants.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace bric {

void PlantModel::rhs(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                     const Eigen::VectorXd& u, double t, Eigen::VectorXd& x_dot,
                     Eigen::VectorXd& z_dot) const {
    const PlantDims d = dims();
    const Eigen::Index kn = static_cast<Eigen::Index>(d.order) * d.channels;
    if (x.size() != kn || z.size() != d.internal || u.size() != d.channels) {
        throw std::invalid_argument("plant rhs dimension mismatch");
    }
    if (!x.allFinite() || !z.allFinite() || !u.allFinite() || !std::isfinite(t)) {
        throw std::invalid_argument("plant rhs requires finite inputs");
    }
    x_dot.resize(kn);
    z_dot.resize(d.internal);
    const Eigen::Index n = d.channels;
    x_dot.head(kn - n) = x.tail(kn - n);  // chain rows x_i' = x_{i+1}
    top_dynamics(x, z, u, t, x_dot.tail(n), z_dot);
}

std::vector<std::string> PlantModel::state_names() const {
    const PlantDims d = dims();
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(d.order) * d.channels);
    for (int i = 1; i <= d.order; ++i) {
        for (int j = 1; j <= d.channels; ++j) {
            names.push_back("x" + std::to_string(i) + "_" + std::to_string(j));
        }
    }
    return names;
}

DoubleIntegratorPlant::DoubleIntegratorPlant(Eigen::VectorXd f_d) : f_d_(std::move(f_d)) {
    if (f_d_.size() < 1 || !f_d_.allFinite()) {
        throw std::invalid_argument("double integrator drift must be finite and non-empty");
    }
}

PlantDims DoubleIntegratorPlant::dims() const {
    return {2, static_cast<int>(f_d_.size()), 0};
}

Eigen::MatrixXd DoubleIntegratorPlant::control_matrix(const Eigen::VectorXd&,
                                                      const Eigen::VectorXd&, double) const {
    return Eigen::MatrixXd::Identity(f_d_.size(), f_d_.size());
}

void DoubleIntegratorPlant::top_dynamics(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                         const Eigen::VectorXd& u, double,
                                         Eigen::Ref<Eigen::VectorXd> xk_dot,
                                         Eigen::Ref<Eigen::VectorXd> z_dot) const {
    xk_dot = f_d_ + u;
    (void)z_dot;  // n_z = 0
}

CouplingGeometry coupling_geometry(const Eigen::Vector2d& theta, const Eigen::Vector2d& theta_dot,
                                   const PendulumParams& p) {
    CouplingGeometry geo;
    const double s1 = std::sin(theta[0]);
    const double s2 = std::sin(theta[1]);
    const double c1 = std::cos(theta[0]);
    const double c2 = std::cos(theta[1]);
    const double diff = theta[1] - theta[0];

    double radicand = p.d_c * p.d_c + p.d_c * p.r_c * (s1 - s2) +
                      0.5 * p.r_c * p.r_c * (1.0 - std::cos(diff));
    // The chain-rule derivative of the radicand.
    const double radicand_dot = p.d_c * p.r_c * (c1 * theta_dot[0] - c2 * theta_dot[1]) +
                                0.5 * p.r_c * p.r_c * std::sin(diff) * (theta_dot[1] - theta_dot[0]);
    if (radicand < 0.0) {
        radicand = 0.0;
        geo.clamped = true;
    }
    geo.x_c = std::sqrt(radicand);
    geo.x_c_dot = geo.x_c > 0.0 ? radicand_dot / (2.0 * geo.x_c) : 0.0;
    geo.theta_c = std::atan2(p.r_c * (c2 - c1), 2.0 * p.d_c + p.r_c * (s1 - s2));
    geo.f_c = p.k_c * (geo.x_c - p.l_c) + p.b_c * geo.x_c_dot;
    return geo;
}

LugreResult lugre_friction(double theta_dot, double tau, const PendulumParams& p) {
    LugreResult out;
    const double v = theta_dot / p.theta_dot_s;
    const double stribeck = p.T_c + (p.T_s - p.T_c) * std::exp(-v * v);
    double fraction = p.sigma0 * std::abs(theta_dot) / stribeck;
    if (p.stribeck_uses_bristle) {
        fraction *= tau;
    }
    out.tau_dot = theta_dot - fraction;
    out.torque = p.sigma0 * tau + p.sigma1 * out.tau_dot + p.sigma2 * theta_dot;
    return out;
}

double motor_factor(double t, const ScenarioFlags& flags) {
    if (flags.motor_failure && t >= flags.failure_start && t < flags.failure_end) {
        return flags.failure_factor;
    }
    return 1.0;
}

Eigen::Vector2d coupling_disturbance(double t) {
    return 5.0 * Eigen::Vector2d(std::sin(2.0 * t - M_PI / 4.0), std::cos(t - M_PI / 6.0));
}

PendulumPlant::PendulumPlant(PendulumParams params, ScenarioFlags flags)
    : params_(params), flags_(flags) {
    const double values[] = {params_.J1, params_.J2, params_.m1, params_.m2,
                             params_.r_c, params_.d_c, params_.l_c, params_.k_c,
                             params_.b_c, params_.g, params_.sigma0, params_.sigma1,
                             params_.sigma2, params_.theta_dot_s, params_.T_s, params_.T_c};
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("pendulum parameters must be positive and finite");
        }
    }
    if (flags_.failure_start >= flags_.failure_end) {
        throw std::invalid_argument("failure window start must precede its end");
    }
}

PlantDims PendulumPlant::dims() const { return {2, 2, 2}; }

std::vector<std::string> PendulumPlant::state_names() const {
    return {"theta1", "theta2", "omega1", "omega2"};
}

std::vector<double> PendulumPlant::discontinuity_times() const {
    if (!flags_.motor_failure) {
        return {};
    }
    return {flags_.failure_start, flags_.failure_end};
}

Eigen::Matrix2d PendulumPlant::input_matrix(const Eigen::Vector2d& theta, double t) const {
    const double s1 = std::sin(theta[0]);
    const double s2 = std::sin(theta[1]);
    const double c1 = std::cos(theta[0]);
    const double c2 = std::cos(theta[1]);
    const double sigma_t = motor_factor(t, flags_);
    Eigen::Matrix2d b;
    b << c1 + 1.5, -c2 * s1,
         -c2 * s1, sigma_t * s2 * c2 + 2.0;
    return b;
}

Eigen::MatrixXd PendulumPlant::control_matrix(const Eigen::VectorXd& x, const Eigen::VectorXd&,
                                              double t) const {
    const Eigen::Vector2d theta = x.head<2>();
    Eigen::Matrix2d g = input_matrix(theta, t);
    g.row(0) /= params_.J1;
    g.row(1) /= params_.J2;
    return g;
}

void PendulumPlant::top_dynamics(const Eigen::VectorXd& x, const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& u, double t,
                                 Eigen::Ref<Eigen::VectorXd> xk_dot,
                                 Eigen::Ref<Eigen::VectorXd> z_dot) const {
    const Eigen::Vector2d theta = x.head<2>();
    const Eigen::Vector2d omega = x.segment<2>(2);

    const CouplingGeometry geo = coupling_geometry(theta, omega, params_);
    if (geo.clamped) {
        clamp_count_.fetch_add(1, std::memory_order_relaxed);
    }
    const Eigen::Matrix2d b = input_matrix(theta, t);
    const Eigen::Vector2d torque_in = b * u;

    const Eigen::Vector2d w =
        flags_.disturbance ? coupling_disturbance(t) : Eigen::Vector2d::Zero();

    const double inertias[2] = {params_.J1, params_.J2};
    const double masses[2] = {params_.m1, params_.m2};
    for (int i = 0; i < 2; ++i) {
        const LugreResult fr = lugre_friction(omega[i], z[i], params_);
        const double lever_sign = (i == 0) ? -1.0 : 1.0;  // (-1)^i for i in {1, 2}
        double balance = params_.r_c * (params_.g * masses[i] * std::sin(theta[i]) +
                                        lever_sign * 0.5 * geo.f_c *
                                            std::cos(theta[i] - geo.theta_c)) -
                         fr.torque + torque_in[i];
        if (flags_.disturbance && !flags_.disturbance_after_inertia) {
            balance += w[i];
        }
        xk_dot[i] = balance / inertias[i];
        if (flags_.disturbance && flags_.disturbance_after_inertia) {
            xk_dot[i] += w[i];
        }
        z_dot[i] = fr.tau_dot;
    }
}

ProbeReport assumption_probe(const PlantModel& model, const std::vector<Eigen::VectorXd>& states,
                             const std::vector<double>& times) {
    if (states.empty() || times.empty()) {
        throw std::invalid_argument("assumption_probe needs at least one state and one time");
    }
    const PlantDims d = model.dims();
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(d.internal);
    ProbeReport report;
    report.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& x : states) {
        for (double t : times) {
            const Eigen::MatrixXd g = model.control_matrix(x, z, t);
            const Eigen::MatrixXd sym = g + g.transpose();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
            const double lo = solver.eigenvalues().minCoeff();
            if (lo < report.min_eigenvalue) {
                report.min_eigenvalue = lo;
                report.at_state = x;
                report.at_time = t;
            }
        }
    }
    report.ok = report.min_eigenvalue > 0.0;
    return report;
}

}  // namespace bric
