#include <bric/sim_engine.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bric {

namespace {

void validate_sim_config(const SimConfig& sim) {
    if (!(sim.t_end > 0.0) || !std::isfinite(sim.t_end)) {
        throw std::invalid_argument("t_end must be positive");
    }
    if (!(sim.h > 0.0) || sim.h > sim.t_end) {
        throw std::invalid_argument("h must satisfy 0 < h <= t_end");
    }
    if (sim.record_every < 1) {
        throw std::invalid_argument("record_every must be >= 1");
    }
    if (!(sim.guard_margin > 0.0) || sim.guard_margin >= 1e-3) {
        throw std::invalid_argument("guard_margin must be in (0, 1e-3)");
    }
    if (sim.max_substep_halvings < 0) {
        throw std::invalid_argument("max_substep_halvings must be >= 0");
    }
}

/// Closed-loop wiring for one controller kind: augmented-state layout,
/// derivative evaluation, guard validation, and row assembly.
class Stepper {
public:
    Stepper(const PlantModel& plant, const ControllerConfig& controller,
            const RegulationTarget& target, const SimConfig& sim, const InitialState& init)
        : plant_(plant), target_(target), sim_(sim), dims_(plant.dims()) {
        const Eigen::Index kn = static_cast<Eigen::Index>(dims_.order) * dims_.channels;
        if (init.x.size() != kn) {
            throw std::invalid_argument("initial x has wrong size");
        }
        if (init.z.size() != dims_.internal) {
            throw std::invalid_argument("initial z has wrong size");
        }
        if (target_.x1_d.size() != dims_.channels) {
            throw std::invalid_argument("target has wrong channel count");
        }

        if (const auto* bric = std::get_if<BricController>(&controller)) {
            bric_ = *bric;
            if (bric_->funnel.size() != dims_.channels) {
                throw std::invalid_argument("funnel channel count does not match the plant");
            }
            if (bric_->d2_init.size() == 0) {
                bric_->d2_init = Eigen::VectorXd::Zero(dims_.channels);
            }
            if (bric_->d2_init.size() != dims_.channels) {
                throw std::invalid_argument("d2 initial value has wrong size");
            }
            lambda_ = bric_->gains.lambda;
            y0_.resize(kn + dims_.internal + 1 + dims_.channels);
            y0_ << init.x, init.z, bric_->d1_init, bric_->d2_init;
        } else {
            ppc_ = std::get<PpcController>(controller);
            lambda_ = ppc_->lambda;
            if (ppc_->rho0_auto) {
                const auto e = compute_errors(init.x, target_);
                const auto s = filtered_errors(e, lambda_);
                ppc_->cfg.rho0 = s.back().norm();
            }
            if (!(ppc_->cfg.rho0 > ppc_->cfg.rho_floor) || !(ppc_->cfg.rho_floor > 0.0)) {
                throw std::invalid_argument("ppc requires rho0 > rho_floor > 0");
            }
            y0_.resize(kn + dims_.internal);
            y0_ << init.x, init.z;
        }
    }

    const Eigen::VectorXd& initial_state() const { return y0_; }

    Eigen::VectorXd rhs(const Eigen::VectorXd& y, double t) const {
        if (!y.allFinite()) {
            throw NumericFailure("non-finite state at t = " + std::to_string(t));
        }
        const Eigen::Index kn = static_cast<Eigen::Index>(dims_.order) * dims_.channels;
        const Eigen::Index n = dims_.channels;
        const Eigen::VectorXd x = y.head(kn);
        const Eigen::VectorXd z = y.segment(kn, dims_.internal);
        const auto e = compute_errors(x, target_);
        const auto s = filtered_errors(e, lambda_);

        Eigen::VectorXd x_dot, z_dot;
        Eigen::VectorXd dy(y.size());
        if (bric_) {
            const Eigen::VectorXd b = beta(bric_->funnel, t);
            const TransformedState ts = transform(s.back(), b, {bric_->gains.kappa},
                                                  sim_.guard_margin);
            BricState st;
            st.d1_hat = y[kn + dims_.internal];
            st.d2_hat = y.tail(n);
            const BricCommand cmd = bric_control(ts, b, st, bric_->gains);
            if (!cmd.u.allFinite()) {
                throw NumericFailure("non-finite control at t = " + std::to_string(t));
            }
            plant_.rhs(x, z, cmd.u, t, x_dot, z_dot);
            dy << x_dot, z_dot, cmd.d1_dot, cmd.d2_dot;
        } else {
            const Eigen::VectorXd rho = ppc_rho(ppc_->cfg, static_cast<int>(n), t);
            guard_ppc(s.back(), rho);
            const Eigen::VectorXd u = ppc_control(s.back(), rho, ppc_->cfg);
            if (!u.allFinite()) {
                throw NumericFailure("non-finite control at t = " + std::to_string(t));
            }
            plant_.rhs(x, z, u, t, x_dot, z_dot);
            dy << x_dot, z_dot;
        }
        return dy;
    }

    /// Guard check of a landed state; throws FunnelViolation or
    /// NumericFailure if it is not an admissible sample.
    void validate(const Eigen::VectorXd& y, double t) const {
        if (!y.allFinite()) {
            throw NumericFailure("non-finite state at t = " + std::to_string(t));
        }
        const Eigen::Index kn = static_cast<Eigen::Index>(dims_.order) * dims_.channels;
        const Eigen::VectorXd x = y.head(kn);
        const auto e = compute_errors(x, target_);
        const auto s = filtered_errors(e, lambda_);
        if (bric_) {
            const Eigen::VectorXd b = beta(bric_->funnel, t);
            (void)transform(s.back(), b, {bric_->gains.kappa}, sim_.guard_margin);
        } else {
            guard_ppc(s.back(), ppc_rho(ppc_->cfg, dims_.channels, t));
        }
    }

    TrajectoryRow make_row(const Eigen::VectorXd& y, double t) const {
        const Eigen::Index kn = static_cast<Eigen::Index>(dims_.order) * dims_.channels;
        const Eigen::Index n = dims_.channels;
        TrajectoryRow row;
        row.t = t;
        row.x = y.head(kn);
        row.z = y.segment(kn, dims_.internal);
        const auto e = compute_errors(row.x, target_);
        const auto s = filtered_errors(e, lambda_);
        row.e.resize(kn);
        row.s.resize(kn);
        for (int i = 0; i < dims_.order; ++i) {
            row.e.segment(i * n, n) = e[static_cast<size_t>(i)];
            row.s.segment(i * n, n) = s[static_cast<size_t>(i)];
        }
        if (bric_) {
            const Eigen::VectorXd b = beta(bric_->funnel, t);
            const TransformedState ts = transform(s.back(), b, {bric_->gains.kappa},
                                                  sim_.guard_margin);
            BricState st;
            st.d1_hat = y[kn + dims_.internal];
            st.d2_hat = y.tail(n);
            const BricCommand cmd = bric_control(ts, b, st, bric_->gains);
            row.eta = ts.eta;
            row.zeta = ts.zeta;
            row.chi = ts.chi;
            row.u = cmd.u;
            row.d1_hat = st.d1_hat;
            row.d2_hat = st.d2_hat;
            row.beta = b;
            row.bound.resize(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                row.bound[j] = phi_value(bric_->funnel, static_cast<int>(j), t);
            }
        } else {
            const Eigen::VectorXd rho = ppc_rho(ppc_->cfg, static_cast<int>(n), t);
            guard_ppc(s.back(), rho);
            row.u = ppc_control(s.back(), rho, ppc_->cfg);
            const Eigen::VectorXd xi = s.back().cwiseQuotient(rho);
            row.eta = xi;
            row.zeta = xi;
            row.chi.resize(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                row.chi[j] = std::log((1.0 + xi[j]) / (1.0 - xi[j]));
            }
            row.d1_hat = 0.0;
            row.d2_hat = Eigen::VectorXd::Zero(n);
            row.beta = Eigen::VectorXd::Ones(n);
            row.bound = rho;
        }
        return row;
    }

private:
    void guard_ppc(const Eigen::VectorXd& s_k, const Eigen::VectorXd& rho) const {
        for (Eigen::Index j = 0; j < s_k.size(); ++j) {
            const double xi = s_k[j] / rho[j];
            if (!std::isfinite(xi) || std::abs(xi) >= 1.0 - sim_.guard_margin) {
                throw FunnelViolation(static_cast<int>(j), xi);
            }
        }
    }

    const PlantModel& plant_;
    RegulationTarget target_;
    SimConfig sim_;
    PlantDims dims_;
    double lambda_ = 1.0;
    std::optional<BricController> bric_;
    std::optional<PpcController> ppc_;
    Eigen::VectorXd y0_;
};

/// One integration step with guard-triggered bisection. Each recursion
/// level halves the step; `depth` levels remain.
Eigen::VectorXd advance(const Stepper& stepper, const Eigen::VectorXd& y, double t, double h,
                        int depth) {
    try {
        Eigen::VectorXd next = rk4_step([&](const Eigen::VectorXd& s, double ts) {
            try {
                return stepper.rhs(s, ts);
            } catch (FunnelViolation& v) {
                v.set_time(ts);
                throw;
            }
        }, y, t, h);
        try {
            stepper.validate(next, t + h);
        } catch (FunnelViolation& v) {
            v.set_time(t + h);
            throw;
        }
        return next;
    } catch (const FunnelViolation&) {
        if (depth <= 0) {
            throw;
        }
    } catch (const NumericFailure&) {
        if (depth <= 0) {
            throw;
        }
    }
    Eigen::VectorXd mid = advance(stepper, y, t, 0.5 * h, depth - 1);
    return advance(stepper, mid, t + 0.5 * h, 0.5 * h, depth - 1);
}

}  // namespace

RunResult run_closed_loop(const PlantModel& plant, const ControllerConfig& controller,
                          const RegulationTarget& target, const SimConfig& sim,
                          const InitialState& init) {
    validate_sim_config(sim);
    Stepper stepper(plant, controller, target, sim, init);

    RunResult result;
    result.trajectory.dims = plant.dims();
    result.trajectory.state_names = plant.state_names();

    // Step boundaries must land exactly on rhs discontinuities and t_end.
    std::vector<double> breakpoints;
    for (double ev : plant.discontinuity_times()) {
        if (ev > 0.0 && ev < sim.t_end) {
            breakpoints.push_back(ev);
        }
    }
    breakpoints.push_back(sim.t_end);
    std::sort(breakpoints.begin(), breakpoints.end());

    Eigen::VectorXd y = stepper.initial_state();
    double t = 0.0;
    try {
        stepper.validate(y, 0.0);
        result.trajectory.rows.push_back(stepper.make_row(y, 0.0));

        size_t break_idx = 0;
        long step_count = 0;
        const double snap_tol = 1e-9 * sim.h;
        while (t < sim.t_end) {
            while (break_idx + 1 < breakpoints.size() && breakpoints[break_idx] <= t + snap_tol) {
                ++break_idx;  // past this boundary already
            }
            // Land exactly on the next boundary; the step into it absorbs
            // remainders up to h/2 so no sliver steps appear.
            const double gap = breakpoints[break_idx] - t;
            double t_next;
            double h_step;
            if (gap <= 1.5 * sim.h) {
                h_step = gap;
                t_next = breakpoints[break_idx];
            } else {
                h_step = sim.h;
                t_next = t + sim.h;
            }
            y = advance(stepper, y, t, h_step, sim.max_substep_halvings);
            t = t_next;
            ++step_count;
            if (step_count % sim.record_every == 0 || t >= sim.t_end) {
                result.trajectory.rows.push_back(stepper.make_row(y, t));
            }
        }
        result.status = RunStatus::success;
        result.message = "completed " + std::to_string(sim.t_end) + " s in " +
                         std::to_string(step_count) + " steps";
    } catch (const FunnelViolation& v) {
        result.status = RunStatus::funnel_violation;
        result.violation = ViolationInfo{v.time(), v.channel(), v.zeta()};
        result.message = std::string(v.what()) + " at t = " + std::to_string(v.time());
    } catch (const NumericFailure& nf) {
        result.status = RunStatus::numeric_failure;
        result.message = nf.what();
    }
    return result;
}

Metrics compute_metrics(const Trajectory& traj, std::optional<Envelope> envelope) {
    if (traj.empty()) {
        throw std::invalid_argument("cannot compute metrics of an empty trajectory");
    }
    const Eigen::Index n = traj.dims.channels;
    const auto& rows = traj.rows;

    Metrics m;
    m.final_error = rows.back().e.head(n).norm();

    double effort = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i + 1 < rows.size()) {
            const double dt = rows[i + 1].t - rows[i].t;
            effort += 0.5 * dt * (rows[i].u.squaredNorm() + rows[i + 1].u.squaredNorm());
        }
        min_margin = std::min(min_margin, 1.0 - rows[i].zeta.cwiseAbs().maxCoeff());
    }
    m.effort = effort;
    m.min_margin = min_margin;

    const double t_ref = 0.75 * rows.back().t;
    size_t ref_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rows.size(); ++i) {
        const double d = std::abs(rows[i].t - t_ref);
        if (d < best) {
            best = d;
            ref_idx = i;
        }
    }
    m.d1_drift = std::abs(rows.back().d1_hat - rows[ref_idx].d1_hat);

    if (envelope) {
        bool ok = true;
        for (const auto& row : rows) {
            if (row.e.norm() > envelope->A * std::exp(-envelope->L * row.t) + envelope->B) {
                ok = false;
                break;
            }
        }
        m.envelope_ok = ok;
    }
    return m;
}

}  // namespace bric
