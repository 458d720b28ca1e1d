#include <bric/controllers.hpp>

#include <cmath>
#include <stdexcept>

namespace bric {

namespace {

void require_positive_gain(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
}

}  // namespace

BricCommand bric_control(const TransformedState& ts,
                         const Eigen::VectorXd& beta,
                         const BricState& st,
                         const BricGains& g) {
    require_positive_gain(g.lambda, "lambda");
    require_positive_gain(g.kappa, "kappa");
    require_positive_gain(g.mu_g, "mu_g");
    require_positive_gain(g.mu_d1, "mu_d1");
    require_positive_gain(g.mu_d2, "mu_d2");
    const auto n = ts.s_k.size();
    if (beta.size() != n || st.d2_hat.size() != n) {
        throw std::invalid_argument("bric_control dimension mismatch");
    }

    // w_j = beta_j * Xi'(s_kj) * T'(zeta_j) * chi_j appears in both the
    // feedback term and the d2 integrator.
    const Eigen::VectorXd rt_chi = ts.r_t.cwiseProduct(ts.chi);
    const Eigen::VectorXd w = beta.cwiseProduct(ts.r_xi).cwiseProduct(rt_chi);

    BricCommand cmd;
    cmd.u = -(g.mu_g + st.d1_hat) * w - st.d2_hat;
    cmd.d1_dot = g.mu_d1 * rt_chi.squaredNorm();
    cmd.d2_dot = g.mu_d2 * w;
    return cmd;
}

Eigen::VectorXd ppc_rho(const PpcConfig& cfg, int n, double t) {
    if (n < 1) {
        throw std::invalid_argument("ppc_rho requires n >= 1");
    }
    if (!(t >= 0.0)) {
        throw std::domain_error("ppc_rho requires t >= 0");
    }
    const double rho = cfg.rho0 * std::exp(-cfg.rho_rate * t) + cfg.rho_floor;
    return Eigen::VectorXd::Constant(n, rho);
}

Eigen::VectorXd ppc_control(const Eigen::VectorXd& s_k,
                            const Eigen::VectorXd& rho,
                            const PpcConfig& cfg) {
    require_positive_gain(cfg.k_ppc, "k_ppc");
    if (s_k.size() != rho.size()) {
        throw std::invalid_argument("ppc_control dimension mismatch");
    }
    Eigen::VectorXd u(s_k.size());
    for (Eigen::Index j = 0; j < s_k.size(); ++j) {
        const double xi = s_k[j] / rho[j];
        if (!std::isfinite(xi) || std::abs(xi) >= 1.0) {
            throw FunnelViolation(static_cast<int>(j), xi);
        }
        const double eps = std::log((1.0 + xi) / (1.0 - xi));
        const double r = 2.0 / (rho[j] * (1.0 - xi * xi));
        u[j] = -cfg.k_ppc * r * eps;
    }
    return u;
}

}  // namespace bric
