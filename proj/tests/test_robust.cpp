#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evidencia/robust.hpp"
#include "evidencia/specfun.hpp"

using namespace evidencia;

namespace {

Mat gaussian_sample(std::uint64_t seed, int n, const Vec& mu, const Mat& chol) {
    Rng rng(seed);
    const auto p = mu.size();
    Mat out(n, p);
    Vec z(p);
    for (int i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) z[j] = rng.normal();
        out.row(i) = (mu + chol * z).transpose();
    }
    return out;
}

} // namespace

TEST_CASE("componentwise median: odd and even row counts") {
    Mat m(4, 2);
    m << 1.0, 10.0, 3.0, 40.0, 2.0, 20.0, 100.0, 30.0;
    Vec med = componentwise_median(m);
    CHECK(med[0] == doctest::Approx(2.5));   // midpoint of 2 and 3
    CHECK(med[1] == doctest::Approx(25.0));  // midpoint of 20 and 30
    Mat o(3, 1);
    o << 5.0, -1.0, 2.0;
    CHECK(componentwise_median(o)[0] == doctest::Approx(2.0));
}

TEST_CASE("type-7 quantile matches the frozen linear-interpolation oracle") {
    Vec x(11);
    x << -1.603837, 0.0641, 0.740891, 0.152619, 0.863744, 2.913099, -1.478823, 0.945473,
        -1.666135, 0.343745, -0.512444;
    CHECK(quantile_type7(x, 0.0) == doctest::Approx(-1.666135).epsilon(1e-12));
    CHECK(quantile_type7(x, 0.25) == doctest::Approx(-0.9956335).epsilon(1e-10));
    CHECK(quantile_type7(x, 0.5) == doctest::Approx(0.152619).epsilon(1e-12));
    CHECK(quantile_type7(x, 0.9) == doctest::Approx(0.945473).epsilon(1e-10));
    CHECK(quantile_type7(x, 1.0) == doctest::Approx(2.913099).epsilon(1e-12));
}

TEST_CASE("raw ellipsoid covers at least half the points") {
    Mat data = gaussian_sample(3, 801, Vec::Zero(3), Mat::Identity(3, 3));
    Rng rng(5);
    RobustScatter rs = mve_estimate(rng, data);
    Eigen::LLT<Mat> llt(rs.scatter);
    REQUIRE(llt.info() == Eigen::Success);
    const double cut = quantile_chisq(0.5, 3);
    long covered = 0;
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        Vec d = data.row(i).transpose() - rs.location;
        if (llt.matrixL().solve(d).squaredNorm() <= cut * (1.0 + 1e-9)) ++covered;
    }
    CHECK(covered >= (data.rows() + 1) / 2);
}

TEST_CASE("gross contamination does not drag the estimate") {
    // 30% of rows pushed to a far cluster; a classical fit would follow them.
    Vec mu = Vec::Zero(2);
    Mat data = gaussian_sample(11, 1000, mu, Mat::Identity(2, 2));
    for (int i = 0; i < 300; ++i) data.row(i) = Vec::Constant(2, 25.0).transpose();
    Rng rng(17);
    RobustScatter raw = mve_estimate(rng, data);
    CHECK(raw.location.norm() < 0.5);
    CHECK(raw.scatter.diagonal().maxCoeff() < 4.0);
    Rng rng2(17);
    RobustScatter rew = mve_reweighted(rng2, data);
    CHECK(rew.location.norm() < 0.5);
    CHECK(rew.scatter.diagonal().maxCoeff() < 4.0);
}

TEST_CASE("affine equivariance under a shared subset stream") {
    Mat data = gaussian_sample(23, 600, Vec::Zero(2), Mat::Identity(2, 2));
    Mat a(2, 2);
    a << 2.0, 0.7, 0.0, 0.5;
    Vec b(2);
    b << -3.0, 8.0;
    Mat transformed = (data * a.transpose()).rowwise() + b.transpose();

    Rng r1(31), r2(31);
    RobustScatter rs = mve_reweighted(r1, data);
    RobustScatter rt = mve_reweighted(r2, transformed);
    Vec loc_expect = a * rs.location + b;
    Mat sc_expect = a * rs.scatter * a.transpose();
    for (int i = 0; i < 2; ++i)
        CHECK(rt.location[i] == doctest::Approx(loc_expect[i]).epsilon(1e-8));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(rt.scatter(i, j) == doctest::Approx(sc_expect(i, j)).epsilon(1e-8));
}

TEST_CASE("reweighted scatter tracks the truncated-normal scale on clean data") {
    // Without a consistency correction the reweighted scatter estimates
    // t(p) * Sigma, t(p) = P(chisq_{p+2} <= chisq_{p,0.975}) / 0.975.
    const int p = 2;
    Mat chol(2, 2);
    chol << 1.0, 0.0, 0.3, 0.8;
    Mat sigma = chol * chol.transpose();
    const double t2 = cdf_chisq(quantile_chisq(0.975, p), p + 2) / 0.975;
    CHECK(t2 == doctest::Approx(0.9054133473304118).epsilon(1e-10));  // frozen oracle

    double logdet_acc = 0.0;
    const int reps = 4;
    for (int r = 0; r < reps; ++r) {
        Mat data = gaussian_sample(100 + r, 4000, Vec::Zero(p), chol);
        Rng rng(200 + r);
        RobustScatter rs = mve_reweighted(rng, data);
        Mat ratio = rs.scatter * sigma.inverse();
        logdet_acc += std::log(ratio.determinant());
    }
    // log det(t * I_2) = 2 log t = -0.1987; Monte Carlo wobble ~ 0.02.
    CHECK(logdet_acc / reps == doctest::Approx(2 * std::log(t2)).epsilon(0.25));
}

TEST_CASE("volume field reports the log determinant") {
    Mat data = gaussian_sample(77, 500, Vec::Zero(2), Mat::Identity(2, 2));
    Rng rng(78);
    RobustScatter rs = mve_estimate(rng, data);
    CHECK(rs.volume ==
          doctest::Approx(std::log(rs.scatter.determinant())).epsilon(1e-8));
}

TEST_CASE("degenerate inputs are rejected") {
    Mat tiny(3, 2);
    tiny.setZero();
    Rng rng(1);
    CHECK_THROWS(mve_estimate(rng, tiny));  // fewer than 2(p+1) rows
    Mat flat(100, 2);
    flat.setZero();
    flat.col(0).setLinSpaced(100, 0.0, 1.0);  // second column constant
    Rng rng2(2);
    CHECK_THROWS(mve_estimate(rng2, flat));
}
