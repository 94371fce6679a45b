#include "evidencia/targets.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "evidencia/specfun.hpp"

namespace evidencia {

TargetModel make_skewt_target(int k, double nu, double delta1) {
    if (k < 1) throw std::invalid_argument("make_skewt_target: k must be >= 1");
    if (!(nu > 0.0)) throw std::invalid_argument("make_skewt_target: nu must be positive");
    if (!(std::abs(delta1) < 1.0))
        throw std::invalid_argument("make_skewt_target: |delta1| must be < 1");

    SkewTParams params;
    params.mu = Vec::Zero(k);
    params.lambda = Mat::Identity(k, k);
    params.delta = Vec::Zero(k);
    params.delta[0] = delta1;
    params.nu = nu;

    auto density = std::make_shared<SkewTDensity>(params);
    TargetModel target;
    target.dim = k;
    target.log_unnorm = [density](const Vec& y) { return (*density)(y); };
    target.sampler = [density](Rng& rng, int n) {
        return sample_skewt(rng, n, density->params());
    };
    target.true_log_z = 0.0;
    return target;
}

namespace {

// log mu and log(1-mu) for linear predictor t, stable in both tails.
void link_logprobs(LinkKind link, double t, double& log_p1, double& log_p0) {
    if (link == LinkKind::Logit) {
        log_p1 = -std::log1p(std::exp(-t));
        log_p0 = -std::log1p(std::exp(t));
        return;
    }
    log_p1 = logcdf_t(t, 3.0);
    log_p0 = logcdf_t(-t, 3.0);
}

} // namespace

TargetModel make_glm_model(Mat design, Vec responses, LinkKind link, double prior_sd) {
    if (design.rows() != responses.size())
        throw std::invalid_argument("make_glm_model: design/response size mismatch");
    if (!(prior_sd > 0.0)) throw std::invalid_argument("make_glm_model: prior sd must be positive");
    auto d = std::make_shared<const Mat>(std::move(design));
    auto y = std::make_shared<const Vec>(std::move(responses));
    TargetModel target;
    target.dim = static_cast<int>(d->cols());
    target.log_unnorm = [d = std::move(d), y = std::move(y), link, prior_sd](const Vec& beta) {
        Vec eta = (*d) * beta;
        double ll = 0.0;
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            double lp1, lp0;
            link_logprobs(link, eta[i], lp1, lp0);
            ll += (*y)[i] > 0.5 ? lp1 : lp0;
        }
        const double q = static_cast<double>(beta.size());
        double lprior = -0.5 * q * std::log(2.0 * M_PI) - q * std::log(prior_sd) -
                        0.5 * beta.squaredNorm() / (prior_sd * prior_sd);
        return ll + lprior;
    };
    return target;
}

GlmTarget make_glm_target(Rng& rng, int n, int q, LinkKind link, double prior_sd) {
    if (q < 1 || n < 5 * q) throw std::invalid_argument("make_glm_target: need n >= 5q, q >= 1");
    if (!(prior_sd > 0.0)) throw std::invalid_argument("make_glm_target: prior sd must be positive");

    Vec beta_true(q);
    if (q == 1)
        beta_true[0] = 0.0;
    else
        for (int j = 0; j < q; ++j) beta_true[j] = -1.0 + 2.0 * j / (q - 1.0);

    for (int attempt = 0; attempt < 5; ++attempt) {
        Mat design(n, q);
        design.col(0).setOnes();
        for (int j = 1; j < q; ++j)
            for (int i = 0; i < n; ++i) design(i, j) = rng.normal();

        Vec responses(n);
        for (int i = 0; i < n; ++i) {
            double t = design.row(i).dot(beta_true);
            double lp1, lp0;
            link_logprobs(link, t, lp1, lp0);
            (void)lp0;
            responses[i] = rng.uniform() < std::exp(lp1) ? 1.0 : 0.0;
        }

        GlmTarget out;
        out.design = design;
        out.responses = responses;
        out.beta_true = beta_true;
        out.prior_sd = prior_sd;
        out.link = link;
        out.model = make_glm_model(std::move(design), std::move(responses), link, prior_sd);
        try {
            out.mode = find_mode(out.model, Vec::Zero(q));
        } catch (const std::runtime_error&) {
            continue;  // mode finding diverged; dataset likely separated
        }
        if (out.mode.theta_hat.cwiseAbs().maxCoeff() > 8.0) continue;
        return out;
    }
    throw std::runtime_error("make_glm_target: data separated in 5 consecutive attempts");
}

McmcResult rw_metropolis(Rng& rng, const TargetModel& target, const ModeSummary& mode,
                         int n_iter, int burn_in) {
    if (n_iter <= burn_in || burn_in < 0)
        throw std::invalid_argument("rw_metropolis: need n_iter > burn_in >= 0");
    const auto p = mode.theta_hat.size();
    Eigen::LLT<Mat> hllt(mode.hessian);
    if (hllt.info() != Eigen::Success)
        throw std::invalid_argument("rw_metropolis: Hessian is not positive definite");
    Mat cov = hllt.solve(Mat::Identity(p, p));
    Eigen::LLT<Mat> cllt(cov);
    if (cllt.info() != Eigen::Success)
        throw std::invalid_argument("rw_metropolis: proposal covariance is not positive definite");
    const double c = 2.38 / std::sqrt(static_cast<double>(p));
    Mat step = c * Mat(cllt.matrixL());

    McmcResult out;
    out.draws.resize(n_iter - burn_in, p);
    Vec x = mode.theta_hat;
    double gx = target.log_unnorm(x);
    Vec z(p);
    long accepted = 0;
    for (int iter = 0; iter < n_iter; ++iter) {
        for (Eigen::Index j = 0; j < p; ++j) z[j] = rng.normal();
        Vec cand = x + step * z;
        double gc = target.log_unnorm(cand);
        if (std::log(rng.uniform()) < gc - gx) {
            x = cand;
            gx = gc;
            ++accepted;
        }
        if (iter >= burn_in) out.draws.row(iter - burn_in) = x.transpose();
    }
    out.acceptance_rate = static_cast<double>(accepted) / n_iter;
    out.tuned_ok = out.acceptance_rate >= 0.05 && out.acceptance_rate <= 0.7;
    if (!out.tuned_ok)
        std::fprintf(stderr, "rw_metropolis: acceptance rate %.3f outside [0.05, 0.7]\n",
                     out.acceptance_rate);
    return out;
}

} // namespace evidencia
