#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "evidencia/kde.hpp"
#include "evidencia/laplace.hpp"
#include "evidencia/rng.hpp"

namespace evidencia {

// H = D C D' and H^{-1} = S A S' with C, A unit-diagonal correlation
// matrices; A is the copula correlation implied by the curvature.
struct HessianDecomposition {
    Vec d;  // sqrt(diag H)
    Mat c;
    Vec s;  // sqrt(diag H^{-1})
    Mat a;
};

HessianDecomposition decompose_hessian(const Mat& hessian);

// One-dimensional marginal abstraction: KDE-backed, grid-backed (normalized
// tabulated log density), or exactly normal. The normal kind exists because
// several identities are only meaningful with analytically exact marginals.
class MarginalModel {
  public:
    static MarginalModel from_kde(KdeModel kde);
    static MarginalModel from_grid(std::vector<double> points, std::vector<double> log_values);
    static MarginalModel from_normal(double mean, double sd);

    double logpdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    double median() const { return median_; }

    // Latent normal coordinate Phi^{-1}(F(x)). CDF values indistinguishable
    // from 0/1 are pulled to [1e-12, 1-1e-12]; each such pull bumps the
    // counter when one is supplied.
    double latent(double x, long* clamp_counter = nullptr) const;

    // Abscissae/log-density pairs for quadrature against this marginal.
    void quad_grid(std::vector<double>& points, std::vector<double>& log_values) const;

  private:
    enum class Kind { Kde, Grid, Normal };
    Kind kind_ = Kind::Normal;
    KdeModel kde_;
    std::vector<double> grid_, log_pdf_, cdf_;
    double mean_ = 0.0, sd_ = 1.0;
    double median_ = 0.0;
};

struct CopulaFit {
    enum class Family { Gaussian, StudentT };
    Family family = Family::Gaussian;
    double nu = 0.0;  // StudentT only
    Mat lambda;       // correlation matrix, unit diagonal, SPD
    std::vector<MarginalModel> marginals;
    Vec reference;

    // Cached by make_copula_fit.
    Mat lambda_chol;  // lower Cholesky factor
    Mat lambda_inv;
    double lambda_logdet = 0.0;
};

// Validates the correlation matrix (symmetric, unit diagonal, SPD) and
// caches its factorization.
CopulaFit make_copula_fit(CopulaFit::Family family, double nu, Mat lambda,
                          std::vector<MarginalModel> marginals, Vec reference);

// Midrank transform then normal quantile, per column.
Mat normal_scores(const Mat& samples);

// Simulation fit: KDE marginals, correlation of the reweighted robust
// scatter of the normal scores, reference at the componentwise median.
CopulaFit fit_gaussian_copula_sim(Rng& rng, const Mat& samples);

// Slice marginal along coordinate j through the mode, overdispersed by the
// power 1/(d_j^2 s_j^2), tabulated on an adaptive grid and normalized.
MarginalModel analytic_marginal(const TargetModel& target, const ModeSummary& mode,
                                const HessianDecomposition& dec, int j);

// Curvature fit: analytic marginals plus the correlation A of H^{-1}.
CopulaFit fit_gaussian_copula_analytic(const TargetModel& target, const ModeSummary& mode);

// Trapezoid integral of h against the marginal density.
double marginal_expectation(const MarginalModel& marginal,
                            const std::function<double(double)>& h);

double gaussian_copula_logpdf(const CopulaFit& fit, const Vec& theta,
                              long* clamp_counter = nullptr);

// g(reference) minus the fitted copula log density there; with the reference
// at the marginal medians the latent coordinates vanish and this reduces to
// g + (1/2)log|lambda| - sum_j log f_j.
double copula_logml(const TargetModel& target, const CopulaFit& fit);

Mat sample_gaussian_copula(Rng& rng, const CopulaFit& fit, int n);

// Pseudo-observations -> t quantiles per candidate nu; correlation by the
// weighted fixed-point likelihood iteration; nu chosen by grid search on the
// copula-scale log likelihood. Marginals are KDEs, reference the median.
CopulaFit fit_t_copula(const Mat& samples, const std::vector<double>& nu_grid);

std::vector<double> default_t_copula_grid();  // 1..10, 15, 20, 50

double t_copula_logml(const TargetModel& target, const CopulaFit& fit);

} // namespace evidencia
