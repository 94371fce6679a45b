#pragma once

#include <Eigen/Dense>

#include "evidencia/rng.hpp"

namespace evidencia {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct MvtParams {
    Vec mu;
    Mat lambda;  // SPD scale matrix (not the covariance unless nu -> inf)
    double nu;
};

struct SkewTParams {
    Vec mu;
    Mat lambda;
    Vec delta;  // skewness direction; requires 1 - delta' lambda^-1 delta > 0
    double nu;
};

double logpdf_mvn(const Vec& x, const Vec& mean, const Mat& cov);
double logpdf_mvt(const Vec& x, const MvtParams& p);
double logpdf_skewt(const Vec& y, const SkewTParams& p);

Mat sample_mvt(Rng& rng, int n, const MvtParams& p);

// Draws via the (k+1)-dimensional t with the skewness variable prepended;
// the positivity conditioning is resolved by a central sign flip, so every
// draw is used (no rejection).
Mat sample_skewt(Rng& rng, int n, const SkewTParams& p);

// Precomputed evaluators for hot loops (factorizations done once).
class MvtDensity {
  public:
    explicit MvtDensity(MvtParams p);
    double operator()(const Vec& x) const;
    const MvtParams& params() const { return p_; }

  private:
    MvtParams p_;
    Eigen::LLT<Mat> llt_;
    double log_norm_;  // log normalizing constant of the density
};

class SkewTDensity {
  public:
    explicit SkewTDensity(SkewTParams p);
    double operator()(const Vec& y) const;
    const SkewTParams& params() const { return p_; }

  private:
    SkewTParams p_;
    Eigen::LLT<Mat> llt_;
    Vec lam_inv_delta_;
    double skew_scale_;  // 1/sqrt(1 - delta' lambda^-1 delta)
    double log_norm_;
};

} // namespace evidencia
