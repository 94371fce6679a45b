#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "evidencia/rng.hpp"

namespace evidencia {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A target is the log unnormalized density g(theta) = log p(theta)p(y|theta),
// optionally with an exact sampler and a known log normalizing constant
// (for validation targets).
struct TargetModel {
    int dim = 0;
    std::function<double(const Vec&)> log_unnorm;
    std::function<Mat(Rng&, int)> sampler;  // may be empty
    std::optional<double> true_log_z;
};

struct ModeSummary {
    Vec theta_hat;
    Mat hessian;  // -g''(theta_hat), SPD when the mode is proper
    double log_f_at_mode = 0.0;
};

using ScalarField = std::function<double(const Vec&)>;

// Central differences, step 1e-4 * max(1, |x_j|) per coordinate.
Vec fd_gradient(const ScalarField& g, const Vec& x);
Mat fd_hessian(const ScalarField& g, const Vec& x);

// Coarse coordinate search, Nelder-Mead, then Newton polish on
// finite-difference derivatives. Requires only density values.
// Throws if the gradient tolerance (inf-norm 1e-6) cannot be met or the
// Hessian at the result is not positive definite.
ModeSummary find_mode(const TargetModel& target, Vec x0);

// (p/2) log 2*pi - (1/2) log|H| + g(theta_hat).
double laplace_logml(const ModeSummary& mode);

// Simulation variant: componentwise median for the center, reweighted robust
// scatter for the curvature. The rng drives the scatter's subset resampling.
double laplace_sim_logml(const TargetModel& target, const Mat& samples, Rng& rng);

} // namespace evidencia
