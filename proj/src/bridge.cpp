#include "evidencia/bridge.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "evidencia/densities.hpp"

namespace evidencia {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct LogSum {
    double total = kNegInf;    // lse of terms
    double total_sq = kNegInf; // lse of doubled terms, for the ESS
    long finite = 0;

    void add(double term) {
        if (term == kNegInf) return;
        total = logaddexp(total, term);
        total_sq = logaddexp(total_sq, 2.0 * term);
        ++finite;
    }
    double ess() const { return std::exp(2.0 * total - total_sq); }
};

} // namespace

BridgeEstimate bridge_logml(const TargetModel& target, const Mat& posterior_draws,
                            const BridgeProposal& proposal, const Mat& proposal_draws,
                            double anchor_log_ml) {
    const auto s = posterior_draws.rows();
    const auto cap_s = proposal_draws.rows();
    if (s < 100 || cap_s < 100)
        throw std::invalid_argument("bridge_logml: need at least 100 draws on each side");
    if (!std::isfinite(anchor_log_ml))
        throw std::invalid_argument("bridge_logml: anchor must be finite");

    const double log_s = std::log(static_cast<double>(s));
    const double log_cap_s = std::log(static_cast<double>(cap_s));
    auto log_t = [&](double g, double log_r) {
        return -logaddexp(log_s + g - anchor_log_ml, log_cap_s + log_r);
    };

    LogSum num; // t * f at proposal draws
    for (Eigen::Index i = 0; i < cap_s; ++i) {
        Vec x = proposal_draws.row(i).transpose();
        double g = target.log_unnorm(x);
        if (g == kNegInf) continue;
        num.add(log_t(g, proposal.log_density(x)) + g);
    }
    if (num.finite == 0)
        throw std::runtime_error("bridge_logml: proposal draws never hit the target support");

    LogSum den; // t * r at posterior draws
    for (Eigen::Index i = 0; i < s; ++i) {
        Vec x = posterior_draws.row(i).transpose();
        double log_r = proposal.log_density(x);
        if (log_r == kNegInf) continue;
        den.add(log_t(target.log_unnorm(x), log_r) + log_r);
    }
    if (den.finite == 0)
        throw std::runtime_error("bridge_logml: proposal density vanishes on all posterior draws");

    BridgeEstimate est;
    est.log_ml = (num.total - log_cap_s) - (den.total - log_s);
    est.numerator_ess = num.ess();
    est.denominator_ess = den.ess();
    est.t_anchor = anchor_log_ml;
    return est;
}

BridgeEstimate bridge_logml(const TargetModel& target, const Mat& posterior_draws,
                            const BridgeProposal& proposal, Rng& rng, int proposal_count,
                            double anchor_log_ml) {
    return bridge_logml(target, posterior_draws, proposal, proposal.draw(rng, proposal_count),
                        anchor_log_ml);
}

BridgeEstimate laplace_bridge(const TargetModel& target, const Mat& posterior_draws,
                              const ModeSummary& mode, Rng& rng, int proposal_count) {
    const auto p = mode.theta_hat.size();
    Eigen::LLT<Mat> hllt(mode.hessian);
    if (hllt.info() != Eigen::Success)
        throw std::invalid_argument("laplace_bridge: Hessian is not positive definite");
    Mat cov = hllt.solve(Mat::Identity(p, p));
    Eigen::LLT<Mat> cllt(cov);
    if (cllt.info() != Eigen::Success)
        throw std::invalid_argument("laplace_bridge: Hessian inverse is not positive definite");
    Mat chol = cllt.matrixL();
    Vec mean = mode.theta_hat;

    BridgeProposal proposal;
    proposal.log_density = [mean, cov](const Vec& x) { return logpdf_mvn(x, mean, cov); };
    proposal.draw = [mean, chol, p](Rng& r, int n) {
        Mat out(n, p);
        Vec g(p);
        for (int i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < p; ++j) g[j] = r.normal();
            out.row(i) = (mean + chol * g).transpose();
        }
        return out;
    };
    return bridge_logml(target, posterior_draws, proposal, rng, proposal_count,
                        laplace_logml(mode));
}

BridgeEstimate copula_bridge(const TargetModel& target, const Mat& posterior_draws, Rng& rng,
                             int proposal_count, long* clamp_counter) {
    auto fit = std::make_shared<CopulaFit>(fit_gaussian_copula_sim(rng, posterior_draws));
    BridgeProposal proposal;
    proposal.log_density = [fit, clamp_counter](const Vec& x) {
        return gaussian_copula_logpdf(*fit, x, clamp_counter);
    };
    proposal.draw = [fit](Rng& r, int n) { return sample_gaussian_copula(r, *fit, n); };
    return bridge_logml(target, posterior_draws, proposal, rng, proposal_count,
                        copula_logml(target, *fit));
}

BridgeEstimate iterative_bridge(const TargetModel& target, const Mat& posterior_draws,
                                const BridgeProposal& proposal, Rng& rng, int proposal_count,
                                double initial_anchor, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("iterative_bridge: max_iter must be >= 1");
    Mat proposal_draws = proposal.draw(rng, proposal_count);
    double anchor = initial_anchor;
    BridgeEstimate est;
    for (int iter = 1; iter <= max_iter; ++iter) {
        est = bridge_logml(target, posterior_draws, proposal, proposal_draws, anchor);
        est.iterations = iter;
        if (std::abs(est.log_ml - anchor) < 1e-4) return est;
        anchor = est.log_ml;
    }
    est.converged = false;
    std::fprintf(stderr, "iterative_bridge: no convergence after %d rounds (last change %.3g)\n",
                 max_iter, est.log_ml - est.t_anchor);
    return est;
}

} // namespace evidencia
