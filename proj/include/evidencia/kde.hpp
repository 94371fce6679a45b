#pragma once

#include <memory>
#include <vector>

// Univariate Gaussian-kernel density estimate with the nrd0 bandwidth rule.
// The log density is always the exact kernel mixture (evaluated over the
// window of kernels that contribute above double-precision noise, which is
// exact to roundoff). CDF and quantile queries go through a 2048-point table
// of the exact mixture CDF spanning the data range plus five bandwidths; the
// table is built on first use so density-only callers never pay for it.

namespace evidencia {

class KdeModel {
  public:
    KdeModel() = default;
    const std::vector<double>& sorted_data() const { return sorted_; }
    double bandwidth() const { return bandwidth_; }

    double logpdf(double x) const;
    double cdf(double x) const;       // clamped to [eps, 1-eps] off the grid
    double quantile(double u) const;  // u in (0,1)

    friend KdeModel kde_fit(std::vector<double> data);

  private:
    struct CdfTable {
        std::vector<double> grid;
        std::vector<double> cdf;
    };
    const CdfTable& table() const;

    std::vector<double> sorted_;
    double bandwidth_ = 0.0;
    mutable std::shared_ptr<const CdfTable> table_;
};

// Bandwidth: 0.9 * min(sd, IQR/1.34) * s^(-1/5); zero-valued terms fall back
// to sd, then |mean|; all-identical data is an error.
KdeModel kde_fit(std::vector<double> data);

} // namespace evidencia
