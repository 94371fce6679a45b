#pragma once

#include <Eigen/Dense>

#include "evidencia/rng.hpp"

namespace evidencia {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct RobustScatter {
    Vec location;
    Mat scatter;
    double volume = 0.0;  // log-determinant of the returned scatter
};

// Per-column median; even row counts use the midpoint of the central pair.
Vec componentwise_median(const Mat& samples);

// Type-7 (linear interpolation) quantile of a column, q in [0,1].
double quantile_type7(const Eigen::Ref<const Vec>& column, double q);

// Resampling minimum-volume-ellipsoid estimate: random (p+1)-point subsets,
// each subset's covariance inflated so its ellipsoid covers half the points,
// keep the subset of smallest inflated log-determinant. Subset indices are
// drawn sequentially from rng before any evaluation.
RobustScatter mve_estimate(Rng& rng, const Mat& samples);

// Refinement used by the simulation estimators: classical moments of the
// half-set closest to the raw ellipsoid, then classical moments of all points
// within the 0.975 chi-square cut of that half-set fit. No consistency
// correction is applied.
RobustScatter mve_reweighted(Rng& rng, const Mat& samples);

} // namespace evidencia
