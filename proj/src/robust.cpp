#include "evidencia/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "evidencia/specfun.hpp"

namespace evidencia {

namespace {

double median_of(std::vector<double>& v) {
    const size_t n = v.size();
    auto mid = v.begin() + n / 2;
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    double upper = *mid;
    double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

// Classical mean and covariance (divisor n-1) of the given rows.
void moments(const Mat& X, const std::vector<int>& rows, Vec& mean, Mat& cov) {
    const auto p = X.cols();
    const auto n = static_cast<Eigen::Index>(rows.size());
    mean = Vec::Zero(p);
    for (int r : rows) mean += X.row(r).transpose();
    mean /= static_cast<double>(n);
    cov = Mat::Zero(p, p);
    for (int r : rows) {
        Vec d = X.row(r).transpose() - mean;
        cov.selfadjointView<Eigen::Lower>().rankUpdate(d);
    }
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= static_cast<double>(n - 1);
}

struct MveCore {
    Vec center;        // best subset mean
    Mat subset_cov;    // best subset covariance (uninflated)
    double inflation;  // median squared distance under subset_cov
    Vec dist2;         // squared distances of all rows under the best subset
};

MveCore mve_core(Rng& rng, const Mat& X) {
    const auto n = X.rows();
    const auto p = X.cols();
    if (n < 2 * (p + 1))
        throw std::invalid_argument("mve: need at least 2(p+1) sample rows");

    const int nsub = std::min<long>(3000, 50L * p * (p + 1));
    // Pre-generate all subset indices so evaluation order cannot affect the
    // stream (and two runs with equal seeds visit identical rows).
    std::vector<int> subsets(static_cast<size_t>(nsub) * (p + 1));
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int s = 0; s < nsub; ++s) {
        for (int j = 0; j < p + 1; ++j) {
            auto r = j + static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n - j));
            if (r >= n) r = n - 1;
            std::swap(pool[j], pool[r]);
            subsets[static_cast<size_t>(s) * (p + 1) + j] = pool[j];
        }
    }

    double best_crit = std::numeric_limits<double>::infinity();
    MveCore best;
    Mat centered(p, n);
    std::vector<double> d2(n), scratch(n);
    std::vector<int> rows(p + 1);
    Vec m;
    Mat C;
    for (int s = 0; s < nsub; ++s) {
        std::copy_n(&subsets[static_cast<size_t>(s) * (p + 1)], p + 1, rows.begin());
        moments(X, rows, m, C);
        Eigen::LLT<Mat> llt(C);
        if (llt.info() != Eigen::Success) continue;
        double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
        if (!std::isfinite(logdet)) continue;
        centered = (X.rowwise() - m.transpose()).transpose();
        llt.matrixL().solveInPlace(centered);
        for (Eigen::Index i = 0; i < n; ++i) d2[i] = centered.col(i).squaredNorm();
        scratch = d2;
        double infl = median_of(scratch);
        double crit = logdet + p * std::log(infl);
        if (crit < best_crit) {
            best_crit = crit;
            best.center = m;
            best.subset_cov = C;
            best.inflation = infl;
            best.dist2 = Eigen::Map<Vec>(d2.data(), n);
        }
    }
    if (!std::isfinite(best_crit))
        throw std::runtime_error("mve: all candidate subsets were singular");
    return best;
}

double spd_logdet(const Mat& m) {
    Eigen::LLT<Mat> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mve: scatter is not positive definite");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

} // namespace

Vec componentwise_median(const Mat& samples) {
    if (samples.rows() < 1) throw std::invalid_argument("componentwise_median: empty input");
    Vec med(samples.cols());
    std::vector<double> col(samples.rows());
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
        Eigen::Map<Vec>(col.data(), samples.rows()) = samples.col(j);
        med[j] = median_of(col);
    }
    return med;
}

double quantile_type7(const Eigen::Ref<const Vec>& column, double q) {
    std::vector<double> v(column.data(), column.data() + column.size());
    std::sort(v.begin(), v.end());
    double h = q * (static_cast<double>(v.size()) - 1.0);
    auto lo = static_cast<size_t>(std::floor(h));
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (h - std::floor(h)) * (v[lo + 1] - v[lo]);
}

RobustScatter mve_estimate(Rng& rng, const Mat& samples) {
    const auto p = samples.cols();
    MveCore core = mve_core(rng, samples);
    double factor = core.inflation / quantile_chisq(0.5, static_cast<double>(p));
    RobustScatter out;
    out.location = core.center;
    out.scatter = core.subset_cov * factor;
    out.volume = spd_logdet(out.scatter);
    return out;
}

RobustScatter mve_reweighted(Rng& rng, const Mat& samples) {
    const auto n = samples.rows();
    const auto p = samples.cols();
    MveCore core = mve_core(rng, samples);

    // Half-set closest to the raw ellipsoid.
    const auto qn = static_cast<Eigen::Index>((n + p + 1) / 2);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::nth_element(order.begin(), order.begin() + qn, order.end(),
                     [&](int a, int b) { return core.dist2[a] < core.dist2[b]; });
    std::vector<int> half(order.begin(), order.begin() + qn);
    Vec m1;
    Mat C1;
    moments(samples, half, m1, C1);
    Eigen::LLT<Mat> llt(C1);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mve_reweighted: half-set covariance is singular");

    Mat centered = (samples.rowwise() - m1.transpose()).transpose();
    llt.matrixL().solveInPlace(centered);
    std::vector<double> dist(n);
    for (Eigen::Index i = 0; i < n; ++i) dist[i] = centered.col(i).squaredNorm();
    std::vector<double> scratch(dist);
    const double pd = static_cast<double>(p);
    double cut = quantile_chisq(0.975, pd) * median_of(scratch) / quantile_chisq(0.5, pd);

    std::vector<int> keep;
    keep.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (dist[i] < cut) keep.push_back(static_cast<int>(i));
    if (static_cast<Eigen::Index>(keep.size()) < p + 1)
        throw std::runtime_error("mve_reweighted: too few points inside the cut");

    RobustScatter out;
    moments(samples, keep, out.location, out.scatter);
    out.volume = spd_logdet(out.scatter);
    return out;
}

} // namespace evidencia
