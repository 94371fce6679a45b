#include "evidencia/copula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "evidencia/robust.hpp"
#include "evidencia/specfun.hpp"

namespace evidencia {

namespace {

constexpr double kTailClamp = 1e-12;

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<double> w(n);
    w[0] = 0.5 * (x[1] - x[0]);
    for (size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (x[i + 1] - x[i - 1]);
    w[n - 1] = 0.5 * (x[n - 1] - x[n - 2]);
    return w;
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t i = static_cast<size_t>(it - xs.begin());
    if (i == 0) return ys.front();
    if (i == xs.size()) return ys.back();
    double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

// Average ranks (1-based), ties resolved to the group mean.
std::vector<double> column_midranks(const Eigen::Ref<const Vec>& col) {
    const auto n = col.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return col[a] < col[b]; });
    std::vector<double> rank(n);
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        while (j + 1 < n && col[order[j + 1]] == col[order[i]]) ++j;
        double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (Eigen::Index t = i; t <= j; ++t) rank[order[t]] = avg;
        i = j + 1;
    }
    return rank;
}

Mat correlation_rescale(const Mat& scatter) {
    Vec dd = scatter.diagonal().array().sqrt();
    Mat corr = scatter.array() / (dd * dd.transpose()).array();
    corr.diagonal().setOnes();
    return 0.5 * (corr + corr.transpose());
}

} // namespace

HessianDecomposition decompose_hessian(const Mat& hessian) {
    Eigen::LLT<Mat> llt(hessian);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("decompose_hessian: matrix is not positive definite");
    Mat inv = llt.solve(Mat::Identity(hessian.rows(), hessian.cols()));
    HessianDecomposition dec;
    dec.d = hessian.diagonal().array().sqrt();
    dec.s = inv.diagonal().array().sqrt();
    dec.c = hessian.array() / (dec.d * dec.d.transpose()).array();
    dec.a = inv.array() / (dec.s * dec.s.transpose()).array();
    dec.c.diagonal().setOnes();
    dec.a.diagonal().setOnes();
    return dec;
}

MarginalModel MarginalModel::from_kde(KdeModel kde) {
    MarginalModel m;
    m.kind_ = Kind::Kde;
    m.kde_ = std::move(kde);
    m.median_ = m.kde_.quantile(0.5);
    return m;
}

MarginalModel MarginalModel::from_grid(std::vector<double> points,
                                       std::vector<double> log_values) {
    if (points.size() != log_values.size() || points.size() < 3)
        throw std::invalid_argument("MarginalModel::from_grid: bad grid");
    MarginalModel m;
    m.kind_ = Kind::Grid;

    // Normalize: divide by the trapezoid integral, in log space.
    auto w = trapezoid_weights(points);
    double peak = *std::max_element(log_values.begin(), log_values.end());
    double acc = 0.0;
    for (size_t i = 0; i < points.size(); ++i)
        acc += w[i] * std::exp(log_values[i] - peak);
    const double log_z = peak + std::log(acc);
    for (auto& v : log_values) v -= log_z;

    m.cdf_.resize(points.size());
    m.cdf_[0] = 0.0;
    for (size_t i = 1; i < points.size(); ++i)
        m.cdf_[i] = m.cdf_[i - 1] + 0.5 * (points[i] - points[i - 1]) *
                                        (std::exp(log_values[i]) + std::exp(log_values[i - 1]));
    const double total = m.cdf_.back();
    for (auto& c : m.cdf_) c /= total;
    m.grid_ = std::move(points);
    m.log_pdf_ = std::move(log_values);
    m.median_ = m.quantile(0.5);
    return m;
}

MarginalModel MarginalModel::from_normal(double mean, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("MarginalModel::from_normal: sd must be positive");
    MarginalModel m;
    m.kind_ = Kind::Normal;
    m.mean_ = mean;
    m.sd_ = sd;
    m.median_ = mean;
    return m;
}

double MarginalModel::logpdf(double x) const {
    switch (kind_) {
        case Kind::Kde: return kde_.logpdf(x);
        case Kind::Normal: {
            double z = (x - mean_) / sd_;
            return -0.5 * std::log(2.0 * M_PI) - std::log(sd_) - 0.5 * z * z;
        }
        case Kind::Grid:
            if (x < grid_.front() || x > grid_.back())
                return -std::numeric_limits<double>::infinity();
            return interp(grid_, log_pdf_, x);
    }
    return 0.0;
}

double MarginalModel::cdf(double x) const {
    switch (kind_) {
        case Kind::Kde: return kde_.cdf(x);
        case Kind::Normal: return cdf_normal((x - mean_) / sd_);
        case Kind::Grid:
            if (x <= grid_.front()) return 0.0;
            if (x >= grid_.back()) return 1.0;
            return interp(grid_, cdf_, x);
    }
    return 0.0;
}

double MarginalModel::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("MarginalModel::quantile: u must lie in (0,1)");
    switch (kind_) {
        case Kind::Kde: return kde_.quantile(u);
        case Kind::Normal: return mean_ + sd_ * quantile_normal(u);
        case Kind::Grid: {
            auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            size_t i = static_cast<size_t>(it - cdf_.begin());
            if (i == 0) return grid_.front();
            if (i == cdf_.size()) return grid_.back();
            double denom = cdf_[i] - cdf_[i - 1];
            if (denom <= 0.0) return grid_[i - 1];
            return grid_[i - 1] + (u - cdf_[i - 1]) / denom * (grid_[i] - grid_[i - 1]);
        }
    }
    return 0.0;
}

double MarginalModel::latent(double x, long* clamp_counter) const {
    if (kind_ == Kind::Normal) return (x - mean_) / sd_;
    double u = cdf(x);
    if (u < kTailClamp || u > 1.0 - kTailClamp) {
        u = std::min(std::max(u, kTailClamp), 1.0 - kTailClamp);
        if (clamp_counter) ++*clamp_counter;
    }
    return quantile_normal(u);
}

void MarginalModel::quad_grid(std::vector<double>& points, std::vector<double>& log_values) const {
    switch (kind_) {
        case Kind::Grid:
            points = grid_;
            log_values = log_pdf_;
            return;
        case Kind::Kde: {
            const auto& d = kde_.sorted_data();
            const double h = kde_.bandwidth();
            const int n = 2048;
            points.resize(n);
            log_values.resize(n);
            const double lo = d.front() - 5.0 * h, hi = d.back() + 5.0 * h;
            for (int i = 0; i < n; ++i) {
                points[i] = lo + (hi - lo) * i / (n - 1);
                log_values[i] = kde_.logpdf(points[i]);
            }
            return;
        }
        case Kind::Normal: {
            const int n = 2001;
            points.resize(n);
            log_values.resize(n);
            for (int i = 0; i < n; ++i) {
                points[i] = mean_ + sd_ * (-10.0 + 20.0 * i / (n - 1));
                log_values[i] = logpdf(points[i]);
            }
            return;
        }
    }
}

CopulaFit make_copula_fit(CopulaFit::Family family, double nu, Mat lambda,
                          std::vector<MarginalModel> marginals, Vec reference) {
    const auto p = lambda.rows();
    if (lambda.cols() != p || static_cast<Eigen::Index>(marginals.size()) != p ||
        reference.size() != p)
        throw std::invalid_argument("make_copula_fit: dimension mismatch");
    if ((lambda - lambda.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("make_copula_fit: correlation matrix is not symmetric");
    if ((lambda.diagonal().array() - 1.0).abs().maxCoeff() > 1e-9)
        throw std::invalid_argument("make_copula_fit: correlation matrix diagonal is not 1");
    lambda = (0.5 * (lambda + lambda.transpose())).eval();
    lambda.diagonal().setOnes();

    CopulaFit fit;
    Eigen::LLT<Mat> llt(lambda);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("make_copula_fit: correlation matrix is not positive definite");
    fit.family = family;
    fit.nu = nu;
    fit.lambda_chol = llt.matrixL();
    fit.lambda_inv = llt.solve(Mat::Identity(p, p));
    fit.lambda_logdet = 2.0 * fit.lambda_chol.diagonal().array().log().sum();
    fit.lambda = std::move(lambda);
    fit.marginals = std::move(marginals);
    fit.reference = std::move(reference);
    return fit;
}

Mat normal_scores(const Mat& samples) {
    const auto n = samples.rows();
    if (n < 2) throw std::invalid_argument("normal_scores: need at least two rows");
    Mat z(n, samples.cols());
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
        auto rank = column_midranks(samples.col(j));
        for (Eigen::Index i = 0; i < n; ++i)
            z(i, j) = quantile_normal((rank[i] - 0.5) / static_cast<double>(n));
    }
    return z;
}

CopulaFit fit_gaussian_copula_sim(Rng& rng, const Mat& samples) {
    const auto p = samples.cols();
    if (samples.rows() < 10 * p)
        throw std::invalid_argument("fit_gaussian_copula_sim: need at least 10*p rows");
    RobustScatter rs = mve_reweighted(rng, normal_scores(samples));
    std::vector<MarginalModel> marginals;
    marginals.reserve(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        std::vector<double> col(samples.col(j).data(), samples.col(j).data() + samples.rows());
        marginals.push_back(MarginalModel::from_kde(kde_fit(std::move(col))));
    }
    return make_copula_fit(CopulaFit::Family::Gaussian, 0.0, correlation_rescale(rs.scatter),
                           std::move(marginals), componentwise_median(samples));
}

MarginalModel analytic_marginal(const TargetModel& target, const ModeSummary& mode,
                                const HessianDecomposition& dec, int j) {
    const double power = 1.0 / (dec.d[j] * dec.d[j] * dec.s[j] * dec.s[j]);
    const double g0 = mode.log_f_at_mode;
    const double center = mode.theta_hat[j];
    Vec point = mode.theta_hat;

    double half = 8.0 * dec.s[j];
    int npts = 1025;
    std::vector<double> xs, lv;
    for (int expansion = 0;; ++expansion) {
        xs.resize(npts);
        lv.resize(npts);
        for (int i = 0; i < npts; ++i) {
            xs[i] = center - half + 2.0 * half * i / (npts - 1);
            point[j] = xs[i];
            lv[i] = power * (target.log_unnorm(point) - g0);
        }
        double peak = *std::max_element(lv.begin(), lv.end());
        bool edges_low = lv.front() <= peak - 23.0 && lv.back() <= peak - 23.0;
        if (edges_low) break;
        // Doubling keeps the step fixed; heavy polynomial tails (low-dof
        // slices under a sub-unit power) can need a few hundred scale units
        // before the density falls to 1e-10 of the peak.
        if (expansion >= 8)
            throw std::runtime_error("analytic_marginal: slice mass not captured by the grid");
        half *= 2.0;
        npts = 2 * npts - 1;
    }
    return MarginalModel::from_grid(std::move(xs), std::move(lv));
}

CopulaFit fit_gaussian_copula_analytic(const TargetModel& target, const ModeSummary& mode) {
    HessianDecomposition dec = decompose_hessian(mode.hessian);
    const int p = static_cast<int>(mode.theta_hat.size());
    std::vector<MarginalModel> marginals;
    marginals.reserve(p);
    Vec reference(p);
    for (int j = 0; j < p; ++j) {
        marginals.push_back(analytic_marginal(target, mode, dec, j));
        reference[j] = marginals.back().median();
    }
    return make_copula_fit(CopulaFit::Family::Gaussian, 0.0, dec.a, std::move(marginals),
                           std::move(reference));
}

double marginal_expectation(const MarginalModel& marginal,
                            const std::function<double(double)>& h) {
    std::vector<double> xs, lv;
    marginal.quad_grid(xs, lv);
    auto w = trapezoid_weights(xs);
    double acc = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) acc += w[i] * h(xs[i]) * std::exp(lv[i]);
    return acc;
}

double gaussian_copula_logpdf(const CopulaFit& fit, const Vec& theta, long* clamp_counter) {
    if (fit.family != CopulaFit::Family::Gaussian)
        throw std::invalid_argument("gaussian_copula_logpdf: fit is not Gaussian-family");
    const auto p = theta.size();
    Vec eta(p);
    double sum_log_f = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
        eta[j] = fit.marginals[j].latent(theta[j], clamp_counter);
        sum_log_f += fit.marginals[j].logpdf(theta[j]);
    }
    const double quad = eta.squaredNorm() - eta.dot(fit.lambda_inv * eta);
    return -0.5 * fit.lambda_logdet + 0.5 * quad + sum_log_f;
}

double copula_logml(const TargetModel& target, const CopulaFit& fit) {
    return target.log_unnorm(fit.reference) - gaussian_copula_logpdf(fit, fit.reference);
}

Mat sample_gaussian_copula(Rng& rng, const CopulaFit& fit, int n) {
    if (fit.family != CopulaFit::Family::Gaussian)
        throw std::invalid_argument("sample_gaussian_copula: fit is not Gaussian-family");
    const auto p = fit.lambda.rows();
    Mat out(n, p);
    Vec g(p);
    for (int i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) g[j] = rng.normal();
        Vec z = fit.lambda_chol * g;
        for (Eigen::Index j = 0; j < p; ++j) {
            double u = cdf_normal(z[j]);
            u = std::min(std::max(u, kTailClamp), 1.0 - kTailClamp);
            out(i, j) = fit.marginals[j].quantile(u);
        }
    }
    return out;
}

std::vector<double> default_t_copula_grid() {
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 50};
}

CopulaFit fit_t_copula(const Mat& samples, const std::vector<double>& nu_grid) {
    const auto n = samples.rows();
    const auto p = samples.cols();
    if (n < 10 * p) throw std::invalid_argument("fit_t_copula: need at least 10*p rows");
    if (nu_grid.empty()) throw std::invalid_argument("fit_t_copula: empty nu grid");

    std::vector<std::vector<double>> ranks(p);
    for (Eigen::Index j = 0; j < p; ++j) ranks[j] = column_midranks(samples.col(j));

    double best_score = -std::numeric_limits<double>::infinity();
    double best_nu = nu_grid.front();
    Mat best_lambda;

    Mat t_mat(n, p);
    std::vector<double> tq(n + 1);
    for (double nu : nu_grid) {
        // Quantile lookup for integer ranks; midranks from ties (rare for
        // continuous draws) fall back to direct evaluation.
        const auto half = static_cast<Eigen::Index>(n / 2);
        for (Eigen::Index r = 1; r <= half; ++r) {
            tq[r] = quantile_t((static_cast<double>(r) - 0.5) / static_cast<double>(n), nu);
            tq[n + 1 - r] = -tq[r];
        }
        if (n % 2 == 1) tq[half + 1] = 0.0;
        for (Eigen::Index j = 0; j < p; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                double r = ranks[j][i];
                double ri;
                t_mat(i, j) = (std::modf(r, &ri) == 0.0)
                                  ? tq[static_cast<Eigen::Index>(ri)]
                                  : quantile_t((r - 0.5) / static_cast<double>(n), nu);
            }

        // Weighted fixed point for the correlation at this nu.
        Vec mean = t_mat.colwise().mean().transpose();
        Mat cov = (t_mat.rowwise() - mean.transpose()).transpose() *
                  (t_mat.rowwise() - mean.transpose()) / static_cast<double>(n - 1);
        Mat lambda = correlation_rescale(cov);
        bool converged = false;
        for (int iter = 0; iter < 500; ++iter) {
            Eigen::LLT<Mat> llt(lambda);
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("fit_t_copula: correlation iterate lost definiteness");
            Mat y = llt.matrixL().solve(t_mat.transpose());
            Vec quad = y.colwise().squaredNorm().transpose();
            Vec w = ((nu + static_cast<double>(p)) / (quad.array() + nu)).matrix();
            Mat m = t_mat.transpose() * w.asDiagonal() * t_mat / static_cast<double>(n);
            m = correlation_rescale(m);
            double diff = (m - lambda).norm();
            lambda = m;
            if (diff < 1e-8) { converged = true; break; }
        }
        if (!converged)
            throw std::runtime_error("fit_t_copula: fixed-point iteration did not converge");

        // Copula-scale log likelihood: joint t minus the univariate t terms.
        Eigen::LLT<Mat> llt(lambda);
        double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        Mat y = llt.matrixL().solve(t_mat.transpose());
        Vec quad = y.colwise().squaredNorm().transpose();
        const double pd = static_cast<double>(p);
        const double nd = static_cast<double>(n);
        double score = nd * (std::lgamma((nu + pd) / 2.0) - std::lgamma(nu / 2.0) -
                             (pd / 2.0) * std::log(nu * M_PI) - 0.5 * logdet) -
                       (nu + pd) / 2.0 * (quad.array() / nu).log1p().sum();
        score -= nd * pd * (std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                            0.5 * std::log(nu * M_PI)) -
                 (nu + 1.0) / 2.0 * (t_mat.array().square() / nu).log1p().sum();
        if (score >= best_score) {
            best_score = score;
            best_nu = nu;
            best_lambda = lambda;
        }
    }

    std::vector<MarginalModel> marginals;
    marginals.reserve(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        std::vector<double> col(samples.col(j).data(), samples.col(j).data() + n);
        marginals.push_back(MarginalModel::from_kde(kde_fit(std::move(col))));
    }
    return make_copula_fit(CopulaFit::Family::StudentT, best_nu, best_lambda,
                           std::move(marginals), componentwise_median(samples));
}

double t_copula_logml(const TargetModel& target, const CopulaFit& fit) {
    if (fit.family != CopulaFit::Family::StudentT)
        throw std::invalid_argument("t_copula_logml: fit is not t-family");
    const double p = static_cast<double>(fit.lambda.rows());
    const double nu = fit.nu;
    double sum_log_f = 0.0;
    for (Eigen::Index j = 0; j < fit.lambda.rows(); ++j)
        sum_log_f += fit.marginals[j].logpdf(fit.reference[j]);
    return target.log_unnorm(fit.reference) + 0.5 * fit.lambda_logdet - sum_log_f +
           p * std::lgamma((nu + 1.0) / 2.0) - std::lgamma((nu + p) / 2.0) -
           (p - 1.0) * std::lgamma(nu / 2.0);
}

} // namespace evidencia
