#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

// Test-only tensor-product trapezoid quadrature for dims <= 3: a dense
// uniform core where the mass sits plus geometrically spaced tail points for
// heavy-tailed integrands. Trapezoid on smooth decaying integrands converges
// fast, so the core step dominates the error budget.

namespace testquad {

inline std::vector<double> axis(double core_half = 8.0, double core_step = 0.05,
                                double outer = 60.0, double ratio = 1.25) {
    std::vector<double> right;
    for (double x = 0.0; x <= core_half + 1e-12; x += core_step) right.push_back(x);
    for (double x = right.back() * ratio; x < outer; x *= ratio) right.push_back(x);
    right.push_back(outer);
    std::vector<double> xs;
    for (auto it = right.rbegin(); it != right.rend(); ++it) xs.push_back(-*it);
    for (size_t i = 1; i < right.size(); ++i) xs.push_back(right[i]);
    return xs;
}

inline std::vector<double> weights(const std::vector<double>& xs) {
    const size_t n = xs.size();
    std::vector<double> w(n);
    w[0] = 0.5 * (xs[1] - xs[0]);
    for (size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (xs[i + 1] - xs[i - 1]);
    w[n - 1] = 0.5 * (xs[n - 1] - xs[n - 2]);
    return w;
}

// Integral of exp(log_f) over R^dim.
inline double integrate_exp(const std::function<double(const Eigen::VectorXd&)>& log_f, int dim,
                            const std::vector<double>& xs) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("integrate_exp: dim must be 1..3");
    const auto w = weights(xs);
    const size_t n = xs.size();
    Eigen::VectorXd point(dim);
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        point[0] = xs[i];
        if (dim == 1) {
            total += w[i] * std::exp(log_f(point));
            continue;
        }
        for (size_t j = 0; j < n; ++j) {
            point[1] = xs[j];
            if (dim == 2) {
                total += w[i] * w[j] * std::exp(log_f(point));
                continue;
            }
            double inner = 0.0;
            for (size_t k = 0; k < n; ++k) {
                point[2] = xs[k];
                inner += w[k] * std::exp(log_f(point));
            }
            total += w[i] * w[j] * inner;
        }
    }
    return total;
}

} // namespace testquad
