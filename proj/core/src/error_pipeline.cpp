#include <bric/error_pipeline.hpp>

#include <cmath>
#include <stdexcept>

namespace bric {

std::vector<Eigen::VectorXd> compute_errors(const Eigen::VectorXd& x,
                                            const RegulationTarget& target) {
    const auto n = target.x1_d.size();
    if (n < 1) {
        throw std::invalid_argument("target must have at least one channel");
    }
    if (x.size() % n != 0 || x.size() / n < 1) {
        throw std::invalid_argument("state size " + std::to_string(x.size()) +
                                    " is not a multiple of channel count " + std::to_string(n));
    }
    const auto k = x.size() / n;
    std::vector<Eigen::VectorXd> e;
    e.reserve(static_cast<size_t>(k));
    e.push_back(x.head(n) - target.x1_d);
    for (Eigen::Index i = 1; i < k; ++i) {
        e.push_back(x.segment(i * n, n));
    }
    return e;
}

std::vector<Eigen::VectorXd> filtered_errors(const std::vector<Eigen::VectorXd>& e,
                                             double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be positive");
    }
    if (e.empty()) {
        throw std::invalid_argument("error stack must be non-empty");
    }
    const size_t k = e.size();
    std::vector<Eigen::VectorXd> s;
    s.reserve(k);
    for (size_t i = 1; i <= k; ++i) {
        // s_i = sum_{l=0}^{i-1} C(i-1,l) lambda^l e_{i-l}
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(e[0].size());
        double coeff = 1.0;  // C(i-1,l) lambda^l, built up incrementally
        for (size_t l = 0; l < i; ++l) {
            acc += coeff * e[i - 1 - l];
            coeff *= lambda * static_cast<double>(i - 1 - l) / static_cast<double>(l + 1);
        }
        s.push_back(std::move(acc));
    }
    return s;
}

TransformedState transform(const Eigen::VectorXd& s_k,
                           const Eigen::VectorXd& beta,
                           SquashParams p,
                           double guard_margin) {
    if (s_k.size() != beta.size()) {
        throw std::invalid_argument("s_k and beta must have the same size");
    }
    const auto n = s_k.size();
    TransformedState ts;
    ts.s_k = s_k;
    ts.eta.resize(n);
    ts.zeta.resize(n);
    ts.chi.resize(n);
    ts.r_xi.resize(n);
    ts.r_t.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (!(beta[j] >= 1.0)) {
            throw std::invalid_argument("beta must be >= 1 on every channel");
        }
        const SquashResult sq = squash(s_k[j], p);
        const double zeta = beta[j] * sq.eta;
        if (!std::isfinite(zeta) || std::abs(zeta) >= 1.0 - guard_margin) {
            throw FunnelViolation(static_cast<int>(j), zeta);
        }
        const BarrierResult br = barrier(zeta);
        ts.eta[j] = sq.eta;
        ts.r_xi[j] = sq.deriv;
        ts.zeta[j] = zeta;
        ts.chi[j] = br.chi;
        ts.r_t[j] = br.deriv;
    }
    return ts;
}

}  // namespace bric
