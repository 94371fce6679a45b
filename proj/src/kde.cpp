#include "evidencia/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "evidencia/specfun.hpp"

namespace evidencia {

namespace {

constexpr int kGridPoints = 2048;
constexpr double kGridPad = 5.0;   // bandwidths beyond the data range
constexpr double kCdfWindow = 8.0; // kernel CDF saturates past this many bandwidths

} // namespace

KdeModel kde_fit(std::vector<double> data) {
    const auto s = data.size();
    if (s < 2) throw std::invalid_argument("kde_fit: need at least two points");
    std::sort(data.begin(), data.end());
    if (data.front() == data.back())
        throw std::invalid_argument("kde_fit: all points identical, bandwidth would be zero");

    const double n = static_cast<double>(s);
    const double mean = std::accumulate(data.begin(), data.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : data) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));

    auto q7 = [&](double q) {
        double h = q * (n - 1.0);
        auto lo = static_cast<size_t>(h);
        if (lo + 1 >= s) return data.back();
        return data[lo] + (h - std::floor(h)) * (data[lo + 1] - data[lo]);
    };
    const double iqr = q7(0.75) - q7(0.25);

    double scale = std::min(sd, iqr / 1.34);
    if (scale == 0.0) scale = sd;
    if (scale == 0.0) scale = std::fabs(mean);
    if (scale == 0.0) throw std::invalid_argument("kde_fit: data admits no positive bandwidth");

    KdeModel model;
    model.sorted_ = std::move(data);
    model.bandwidth_ = 0.9 * scale * std::pow(n, -0.2);
    return model;
}

double KdeModel::logpdf(double x) const {
    const auto& d = sorted_;
    const double h = bandwidth_;
    const auto s = d.size();
    // Nearest kernel dominates; neighbors matter until 40 log-units below it.
    auto it = std::lower_bound(d.begin(), d.end(), x);
    size_t right = static_cast<size_t>(it - d.begin());
    size_t left = (right > 0) ? right - 1 : right;
    auto expo = [&](size_t i) {
        double z = (x - d[i]) / h;
        return -0.5 * z * z;
    };
    double emax = std::max(expo(left), (right < s) ? expo(right) : -INFINITY);
    const double floor_ = emax - 40.0;
    double sum = 0.0;
    for (size_t i = right; i < s; ++i) {
        double e = expo(i);
        if (e < floor_) break;
        sum += std::exp(e - emax);
    }
    for (size_t i = left + 1; i-- > 0;) {
        if (i == right) continue;  // right==left==0 overlap guard
        double e = expo(i);
        if (e < floor_) break;
        sum += std::exp(e - emax);
    }
    return emax + std::log(sum) - std::log(static_cast<double>(s) * h * std::sqrt(2.0 * M_PI));
}

const KdeModel::CdfTable& KdeModel::table() const {
    if (!table_) {
        auto t = std::make_shared<CdfTable>();
        const auto& d = sorted_;
        const double h = bandwidth_;
        const double lo = d.front() - kGridPad * h;
        const double hi = d.back() + kGridPad * h;
        t->grid.resize(kGridPoints);
        t->cdf.resize(kGridPoints);
        const double step = (hi - lo) / (kGridPoints - 1);
        const double inv_s = 1.0 / static_cast<double>(d.size());
        // Sorted data + ascending grid: kernels fully left of the window
        // contribute exactly 1, fully right contribute 0.
        size_t lo_idx = 0, hi_idx = 0;
        for (int i = 0; i < kGridPoints; ++i) {
            const double g = lo + step * i;
            while (lo_idx < d.size() && d[lo_idx] < g - kCdfWindow * h) ++lo_idx;
            while (hi_idx < d.size() && d[hi_idx] <= g + kCdfWindow * h) ++hi_idx;
            double acc = static_cast<double>(lo_idx);
            for (size_t j = lo_idx; j < hi_idx; ++j) acc += cdf_normal((g - d[j]) / h);
            t->grid[i] = g;
            double v = acc * inv_s;
            t->cdf[i] = (i > 0) ? std::max(v, t->cdf[i - 1]) : v;
        }
        table_ = std::move(t);
    }
    return *table_;
}

double KdeModel::cdf(double x) const {
    const auto& t = table();
    if (x <= t.grid.front()) return t.cdf.front();
    if (x >= t.grid.back()) return t.cdf.back();
    auto it = std::upper_bound(t.grid.begin(), t.grid.end(), x);
    size_t i = static_cast<size_t>(it - t.grid.begin());
    double w = (x - t.grid[i - 1]) / (t.grid[i] - t.grid[i - 1]);
    return t.cdf[i - 1] + w * (t.cdf[i] - t.cdf[i - 1]);
}

double KdeModel::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::invalid_argument("KdeModel::quantile: u must lie in (0,1)");
    const auto& t = table();
    if (u <= t.cdf.front()) return t.grid.front();
    if (u >= t.cdf.back()) return t.grid.back();
    auto it = std::upper_bound(t.cdf.begin(), t.cdf.end(), u);
    size_t i = static_cast<size_t>(it - t.cdf.begin());
    double denom = t.cdf[i] - t.cdf[i - 1];
    if (denom <= 0.0) return t.grid[i - 1];
    double w = (u - t.cdf[i - 1]) / denom;
    return t.grid[i - 1] + w * (t.grid[i] - t.grid[i - 1]);
}

} // namespace evidencia
