#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "evidencia/kde.hpp"
#include "evidencia/rng.hpp"

using namespace evidencia;

namespace {

const std::vector<double> kSample = {-1.603837, 0.0641,    0.740891, 0.152619,
                                     0.863744,  2.913099,  -1.478823, 0.945473,
                                     -1.666135, 0.343745,  -0.512444};

// Full mixture log density via a stable log-sum-exp, no windowing.
double brute_logpdf(const KdeModel& m, double x) {
    const auto& d = m.sorted_data();
    const double h = m.bandwidth();
    double emax = -INFINITY;
    std::vector<double> e(d.size());
    for (size_t i = 0; i < d.size(); ++i) {
        double z = (x - d[i]) / h;
        e[i] = -0.5 * z * z;
        emax = std::max(emax, e[i]);
    }
    double sum = 0.0;
    for (double v : e) sum += std::exp(v - emax);
    return emax + std::log(sum) -
           std::log(static_cast<double>(d.size()) * h * std::sqrt(2.0 * M_PI));
}

} // namespace

TEST_CASE("bandwidth rule matches the frozen oracle on an 11-point sample") {
    KdeModel m = kde_fit(kSample);
    CHECK(m.bandwidth() == doctest::Approx(0.7475444571744004).epsilon(1e-12));
    CHECK(m.sorted_data().front() == doctest::Approx(-1.666135));
    CHECK(m.sorted_data().back() == doctest::Approx(2.913099));
}

TEST_CASE("log density equals the full kernel mixture everywhere") {
    KdeModel m = kde_fit(kSample);
    for (double x : {-8.0, -1.7, -1.55, 0.0, 0.15, 1.2, 2.9, 4.0, 9.0, 25.0}) {
        CHECK(m.logpdf(x) == doctest::Approx(brute_logpdf(m, x)).epsilon(1e-12));
    }
    // Larger sample with clusters: windowing must still be exact.
    Rng rng(404);
    std::vector<double> big(5000);
    for (auto& v : big) v = rng.normal() + ((rng.uniform() < 0.3) ? 6.0 : 0.0);
    KdeModel mb = kde_fit(big);
    for (double x : {-4.0, 0.0, 2.7, 3.1, 6.0, 11.0}) {
        CHECK(mb.logpdf(x) == doctest::Approx(brute_logpdf(mb, x)).epsilon(1e-12));
    }
}

TEST_CASE("density integrates to one") {
    KdeModel m = kde_fit(kSample);
    const double lo = m.sorted_data().front() - 10.0 * m.bandwidth();
    const double hi = m.sorted_data().back() + 10.0 * m.bandwidth();
    const int n = 4001;
    const double step = (hi - lo) / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * std::exp(m.logpdf(lo + step * i));
    }
    CHECK(acc * step == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cdf is monotone and hits kernel-mixture values") {
    KdeModel m = kde_fit(kSample);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        double x = -4.0 + 8.5 * i / 200.0;
        double c = m.cdf(x);
        CHECK(c >= prev);
        prev = c;
    }
    // Exact mixture CDF at a grid-independent midpoint, coarse tolerance for
    // the table interpolation.
    double acc = 0.0;
    for (double d : kSample) acc += 0.5 * std::erfc(-(0.4 - d) / m.bandwidth() / std::sqrt(2.0));
    acc /= static_cast<double>(kSample.size());
    CHECK(m.cdf(0.4) == doctest::Approx(acc).epsilon(1e-5));
}

TEST_CASE("quantile inverts the cdf") {
    KdeModel m = kde_fit(kSample);
    for (double u : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        CHECK(m.cdf(m.quantile(u)) == doctest::Approx(u).epsilon(1e-9));
    }
    for (double x : {-1.2, 0.0, 0.5, 1.8}) {
        CHECK(m.quantile(m.cdf(x)) == doctest::Approx(x).epsilon(1e-9));
    }
    CHECK_THROWS(m.quantile(0.0));
    CHECK_THROWS(m.quantile(1.0));
    CHECK_THROWS(kde_fit({1.0}));
    CHECK_THROWS(kde_fit({2.0, 2.0, 2.0}));
}
