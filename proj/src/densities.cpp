#include "evidencia/densities.hpp"

#include <cmath>
#include <stdexcept>

#include "evidencia/specfun.hpp"

namespace evidencia {

namespace {

Eigen::LLT<Mat> checked_llt(const Mat& m, const char* what) {
    Eigen::LLT<Mat> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error(std::string(what) + ": matrix is not positive definite");
    return llt;
}

double chol_logdet(const Eigen::LLT<Mat>& llt) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

} // namespace

double logpdf_mvn(const Vec& x, const Vec& mean, const Mat& cov) {
    const auto p = static_cast<double>(x.size());
    auto llt = checked_llt(cov, "logpdf_mvn");
    Vec z = llt.matrixL().solve(x - mean);
    return -0.5 * p * std::log(2.0 * M_PI) - 0.5 * chol_logdet(llt) - 0.5 * z.squaredNorm();
}

MvtDensity::MvtDensity(MvtParams p) : p_(std::move(p)), llt_(checked_llt(p_.lambda, "MvtDensity")) {
    if (p_.nu <= 0.0) throw std::invalid_argument("MvtDensity: nu must be positive");
    const double k = static_cast<double>(p_.mu.size());
    log_norm_ = std::lgamma((p_.nu + k) / 2.0) - std::lgamma(p_.nu / 2.0) -
                (k / 2.0) * std::log(p_.nu * M_PI) - 0.5 * chol_logdet(llt_);
}

double MvtDensity::operator()(const Vec& x) const {
    const double k = static_cast<double>(p_.mu.size());
    Vec z = llt_.matrixL().solve(x - p_.mu);
    return log_norm_ - (p_.nu + k) / 2.0 * std::log1p(z.squaredNorm() / p_.nu);
}

double logpdf_mvt(const Vec& x, const MvtParams& p) { return MvtDensity(p)(x); }

SkewTDensity::SkewTDensity(SkewTParams p)
    : p_(std::move(p)), llt_(checked_llt(p_.lambda, "SkewTDensity")) {
    if (p_.nu <= 0.0) throw std::invalid_argument("SkewTDensity: nu must be positive");
    lam_inv_delta_ = llt_.solve(p_.delta);
    const double rem = 1.0 - p_.delta.dot(lam_inv_delta_);
    if (rem <= 0.0)
        throw std::invalid_argument("SkewTDensity: skewness vector too large for the scale");
    skew_scale_ = 1.0 / std::sqrt(rem);
    const double k = static_cast<double>(p_.mu.size());
    log_norm_ = std::log(2.0) + std::lgamma((p_.nu + k) / 2.0) - std::lgamma(p_.nu / 2.0) -
                (k / 2.0) * std::log(p_.nu * M_PI) - 0.5 * chol_logdet(llt_);
}

double SkewTDensity::operator()(const Vec& y) const {
    const double k = static_cast<double>(p_.mu.size());
    Vec centered = y - p_.mu;
    Vec z = llt_.matrixL().solve(centered);
    const double quad = z.squaredNorm();
    const double arg = centered.dot(lam_inv_delta_) * skew_scale_ *
                       std::sqrt((p_.nu + k) / (p_.nu + quad));
    return log_norm_ - (p_.nu + k) / 2.0 * std::log1p(quad / p_.nu) +
           logcdf_t(arg, p_.nu + k);
}

double logpdf_skewt(const Vec& y, const SkewTParams& p) { return SkewTDensity(p)(y); }

Mat sample_mvt(Rng& rng, int n, const MvtParams& p) {
    if (n < 1) throw std::invalid_argument("sample_mvt: n must be positive");
    auto llt = checked_llt(p.lambda, "sample_mvt");
    const auto k = p.mu.size();
    Mat out(n, k);
    Vec g(k);
    for (int i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) g[j] = rng.normal();
        double scale = std::sqrt(rng.chisq(p.nu) / p.nu);
        out.row(i) = (p.mu + (llt.matrixL() * g) / scale).transpose();
    }
    return out;
}

Mat sample_skewt(Rng& rng, int n, const SkewTParams& p) {
    if (n < 1) throw std::invalid_argument("sample_skewt: n must be positive");
    const auto k = p.mu.size();
    // Joint scale of (skew variable, coordinates): unit variance on top,
    // delta as the cross block.
    Mat lam_star(k + 1, k + 1);
    lam_star(0, 0) = 1.0;
    lam_star.block(0, 1, 1, k) = p.delta.transpose();
    lam_star.block(1, 0, k, 1) = p.delta;
    lam_star.block(1, 1, k, k) = p.lambda;
    auto llt = checked_llt(lam_star, "sample_skewt");
    Mat out(n, k);
    Vec g(k + 1);
    for (int i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k + 1; ++j) g[j] = rng.normal();
        Vec z = llt.matrixL() * g;
        double scale = std::sqrt(rng.chisq(p.nu) / p.nu);
        z /= scale;
        double flip = (z[0] < 0.0) ? -1.0 : 1.0;
        out.row(i) = (p.mu + flip * z.tail(k)).transpose();
    }
    return out;
}

} // namespace evidencia
