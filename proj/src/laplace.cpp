#include "evidencia/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "evidencia/robust.hpp"

namespace evidencia {

namespace {

Vec fd_steps(const Vec& x, double rel) {
    return rel * x.array().abs().max(1.0);
}

// Nelder-Mead on -g. Good enough to land in the Newton basin.
Vec nelder_mead_max(const ScalarField& g, Vec x0, int max_iter) {
    const int p = static_cast<int>(x0.size());
    std::vector<Vec> simplex(p + 1, x0);
    std::vector<double> fv(p + 1);
    for (int j = 0; j < p; ++j)
        simplex[j + 1][j] += (x0[j] != 0.0) ? 0.05 * std::fabs(x0[j]) + 0.05 : 0.25;
    for (int j = 0; j <= p; ++j) fv[j] = -g(simplex[j]);

    auto order = [&] {
        std::vector<int> idx(p + 1);
        for (int i = 0; i <= p; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<Vec> s2(p + 1);
        std::vector<double> f2(p + 1);
        for (int i = 0; i <= p; ++i) { s2[i] = simplex[idx[i]]; f2[i] = fv[idx[i]]; }
        simplex.swap(s2);
        fv.swap(f2);
    };
    order();
    for (int it = 0; it < max_iter; ++it) {
        if (std::fabs(fv[p] - fv[0]) < 1e-13 * (1.0 + std::fabs(fv[0])) &&
            (simplex[p] - simplex[0]).cwiseAbs().maxCoeff() < 1e-10)
            break;
        Vec centroid = Vec::Zero(p);
        for (int j = 0; j < p; ++j) centroid += simplex[j];
        centroid /= p;
        Vec xr = centroid + (centroid - simplex[p]);
        double fr = -g(xr);
        if (fr < fv[0]) {
            Vec xe = centroid + 2.0 * (centroid - simplex[p]);
            double fe = -g(xe);
            if (fe < fr) { simplex[p] = xe; fv[p] = fe; }
            else { simplex[p] = xr; fv[p] = fr; }
        } else if (fr < fv[p - 1]) {
            simplex[p] = xr; fv[p] = fr;
        } else {
            Vec xc = centroid + 0.5 * (simplex[p] - centroid);
            double fc = -g(xc);
            if (fc < fv[p]) { simplex[p] = xc; fv[p] = fc; }
            else {
                for (int j = 1; j <= p; ++j) {
                    simplex[j] = simplex[0] + 0.5 * (simplex[j] - simplex[0]);
                    fv[j] = -g(simplex[j]);
                }
            }
        }
        order();
    }
    return simplex[0];
}

} // namespace

Vec fd_gradient(const ScalarField& g, const Vec& x) {
    const int p = static_cast<int>(x.size());
    Vec h = fd_steps(x, 1e-5);
    Vec grad(p);
    Vec xp = x, xm = x;
    for (int j = 0; j < p; ++j) {
        xp[j] = x[j] + h[j];
        xm[j] = x[j] - h[j];
        grad[j] = (g(xp) - g(xm)) / (2.0 * h[j]);
        xp[j] = x[j];
        xm[j] = x[j];
    }
    return grad;
}

Mat fd_hessian(const ScalarField& g, const Vec& x) {
    const int p = static_cast<int>(x.size());
    Vec h = fd_steps(x, 1e-4);
    Mat H(p, p);
    const double g0 = g(x);
    Vec xt = x;
    for (int i = 0; i < p; ++i) {
        xt[i] = x[i] + h[i];
        double gp = g(xt);
        xt[i] = x[i] - h[i];
        double gm = g(xt);
        xt[i] = x[i];
        H(i, i) = (gp - 2.0 * g0 + gm) / (h[i] * h[i]);
    }
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            xt[i] = x[i] + h[i]; xt[j] = x[j] + h[j];
            double gpp = g(xt);
            xt[j] = x[j] - h[j];
            double gpm = g(xt);
            xt[i] = x[i] - h[i];
            double gmm = g(xt);
            xt[j] = x[j] + h[j];
            double gmp = g(xt);
            xt[i] = x[i]; xt[j] = x[j];
            H(i, j) = H(j, i) = (gpp - gpm - gmp + gmm) / (4.0 * h[i] * h[j]);
        }
    }
    return H;
}

ModeSummary find_mode(const TargetModel& target, Vec x0) {
    const auto& g = target.log_unnorm;
    if (!g) throw std::invalid_argument("find_mode: target has no log density");
    if (x0.size() != target.dim) throw std::invalid_argument("find_mode: x0 has wrong dimension");

    // Coarse per-coordinate sweep to escape bad starts.
    double best = g(x0);
    if (!std::isfinite(best)) throw std::invalid_argument("find_mode: x0 outside the target domain");
    for (int j = 0; j < target.dim; ++j) {
        for (double step : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
            Vec cand = x0;
            cand[j] += step;
            double v = g(cand);
            if (v > best) { best = v; x0 = cand; }
        }
    }

    Vec x = nelder_mead_max(g, x0, 400 * target.dim);

    // Newton polish on finite-difference derivatives.
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        Vec grad = fd_gradient(g, x);
        if (grad.cwiseAbs().maxCoeff() < 1e-7) { converged = true; break; }
        Mat H = -fd_hessian(g, x);
        Eigen::LDLT<Mat> ldlt(H);
        Vec step;
        if (ldlt.info() == Eigen::Success && ldlt.isPositive())
            step = ldlt.solve(grad);
        else
            step = grad;  // gradient ascent fallback away from the basin
        double gx = g(x);
        double scale = 1.0;
        for (int ls = 0; ls < 40; ++ls, scale *= 0.5) {
            Vec xn = x + scale * step;
            if (g(xn) > gx) { x = xn; break; }
        }
        if (scale < 1e-12) break;  // no ascent direction left
    }
    Vec grad = fd_gradient(g, x);
    // Inverted predicates so NaN gradients (unbounded directions) also fail.
    if (!converged && !(grad.cwiseAbs().maxCoeff() < 1e-6))
        throw std::runtime_error("find_mode: gradient tolerance not reached");

    ModeSummary mode;
    mode.theta_hat = x;
    mode.hessian = fd_hessian(g, x) * -1.0;
    mode.log_f_at_mode = g(x);
    if (!x.allFinite() || !mode.hessian.allFinite() || !std::isfinite(mode.log_f_at_mode))
        throw std::runtime_error("find_mode: optimum escaped to a non-finite point");
    Eigen::LLT<Mat> llt(mode.hessian);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("find_mode: Hessian at the optimum is not positive definite");
    return mode;
}

double laplace_logml(const ModeSummary& mode) {
    const double p = static_cast<double>(mode.theta_hat.size());
    Eigen::LLT<Mat> llt(mode.hessian);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("laplace_logml: Hessian is not positive definite");
    double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return 0.5 * p * std::log(2.0 * M_PI) - 0.5 * logdet + mode.log_f_at_mode;
}

double laplace_sim_logml(const TargetModel& target, const Mat& samples, Rng& rng) {
    const auto p = samples.cols();
    if (samples.rows() < 10 * p)
        throw std::invalid_argument("laplace_sim_logml: need at least 10*p sample rows");
    Vec center = componentwise_median(samples);
    RobustScatter rs = mve_reweighted(rng, samples);
    Eigen::LLT<Mat> llt(rs.scatter);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("laplace_sim_logml: degenerate scatter");
    double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return target.log_unnorm(center) + 0.5 * static_cast<double>(p) * std::log(2.0 * M_PI) +
           0.5 * logdet;
}

} // namespace evidencia
