#pragma once

#include <cmath>
#include <string_view>
#include <vector>

// Benchmark reference values for the skew-t grid: the calibration targets
// this suite reproduces. Each entry is the reference mean and, for the
// stochastic methods, the replicate standard deviation at s=S=10^4 with 50
// replicates (sd is NaN for the deterministic methods L1/CL1). The true log
// integral is 0 for every cell.
//
// Flags:
//   suspected_misprint — the (k=5, nu=10, delta1=0, L2) reference reads
//     -0.31 while its delta1=0.5 neighbour reads +0.30; reweighted-scatter
//     theory and simulation both give +0.30 here, so the sign looks like a
//     typo in the source table. Kept verbatim; the acceptance gate reports
//     the discrepancy instead of editing the number.
//   covariance_scale — CL2 reference values at k>=5 track the covariance
//     of the latent scores rather than the correlation this library pins
//     (both conventions integrate to 1; see README). Comparisons against
//     these entries are expected to fail by roughly log|diag scale|.

namespace refvals {

struct Entry {
    int k;
    double nu;
    double delta1;
    const char* method;
    double mean;
    double sd;
    bool suspected_misprint = false;
    bool covariance_scale = false;
};

inline const std::vector<Entry>& table() {
    static const double na = std::nan("");
    static const std::vector<Entry> t = {
        // k = 2, nu = 3
        {2, 3, 0.00, "L1", -0.51, na},
        {2, 3, 0.50, "L1", -0.51, na},
        {2, 3, 0.99, "L1", -0.60, na},
        {2, 3, 0.00, "L2", 0.09, 0.02},
        {2, 3, 0.50, "L2", 0.07, 0.02},
        {2, 3, 0.99, "L2", -0.30, 0.02},
        {2, 3, 0.00, "CL1", -0.16, na},
        {2, 3, 0.50, "CL1", -0.17, na},
        {2, 3, 0.99, "CL1", -0.17, na},
        {2, 3, 0.00, "CL2", 0.20, 0.02},
        {2, 3, 0.50, "CL2", 0.18, 0.03},
        {2, 3, 0.99, "CL2", 0.09, 0.03},
        {2, 3, 0.00, "TC", 0.04, 0.03},
        {2, 3, 0.50, "TC", 0.03, 0.02},
        {2, 3, 0.99, "TC", -0.01, 0.02},
        {2, 3, 0.00, "LB", 0.00, 0.01},
        {2, 3, 0.50, "LB", 0.00, 0.01},
        {2, 3, 0.99, "LB", 0.00, 0.01},
        {2, 3, 0.00, "CLB", 0.00, 0.00},
        {2, 3, 0.50, "CLB", 0.00, 0.00},
        {2, 3, 0.99, "CLB", 0.00, 0.01},
        // k = 2, nu = 10
        {2, 10, 0.00, "L1", -0.18, na},
        {2, 10, 0.50, "L1", -0.18, na},
        {2, 10, 0.99, "L1", -0.34, na},
        {2, 10, 0.00, "L2", -0.03, 0.01},
        {2, 10, 0.50, "L2", -0.04, 0.02},
        {2, 10, 0.99, "L2", -0.27, 0.02},
        {2, 10, 0.00, "CL1", -0.05, na},
        {2, 10, 0.50, "CL1", -0.05, na},
        {2, 10, 0.99, "CL1", -0.05, na},
        {2, 10, 0.00, "CL2", 0.07, 0.03},
        {2, 10, 0.50, "CL2", 0.07, 0.03},
        {2, 10, 0.99, "CL2", 0.04, 0.03},
        {2, 10, 0.00, "TC", 0.02, 0.03},
        {2, 10, 0.50, "TC", 0.02, 0.03},
        {2, 10, 0.99, "TC", 0.01, 0.03},
        {2, 10, 0.00, "LB", 0.00, 0.00},
        {2, 10, 0.50, "LB", 0.00, 0.00},
        {2, 10, 0.99, "LB", 0.00, 0.01},
        {2, 10, 0.00, "CLB", 0.00, 0.00},
        {2, 10, 0.50, "CLB", 0.00, 0.00},
        {2, 10, 0.99, "CLB", 0.00, 0.00},
        // k = 5, nu = 3
        {5, 3, 0.00, "L1", -1.55, na},
        {5, 3, 0.50, "L1", -1.55, na},
        {5, 3, 0.99, "L1", -1.69, na},
        {5, 3, 0.00, "L2", 1.08, 0.03},
        {5, 3, 0.50, "L2", 1.02, 0.03},
        {5, 3, 0.99, "L2", 0.50, 0.04},
        {5, 3, 0.00, "CL1", -1.04, na},
        {5, 3, 0.50, "CL1", -1.05, na},
        {5, 3, 0.99, "CL1", -1.06, na},
        {5, 3, 0.00, "CL2", 0.66, 0.04, false, true},
        {5, 3, 0.50, "CL2", 0.60, 0.05, false, true},
        {5, 3, 0.99, "CL2", 0.32, 0.06, false, true},
        {5, 3, 0.00, "TC", 0.08, 0.05},
        {5, 3, 0.50, "TC", 0.04, 0.05},
        {5, 3, 0.99, "TC", -0.01, 0.06},
        {5, 3, 0.00, "LB", 0.00, 0.01},
        {5, 3, 0.50, "LB", 0.00, 0.01},
        {5, 3, 0.99, "LB", 0.00, 0.02},
        {5, 3, 0.00, "CLB", 0.00, 0.01},
        {5, 3, 0.50, "CLB", 0.00, 0.01},
        {5, 3, 0.99, "CLB", 0.00, 0.01},
        // k = 5, nu = 10
        {5, 10, 0.00, "L1", -0.68, na},
        {5, 10, 0.50, "L1", -0.68, na},
        {5, 10, 0.99, "L1", -0.85, na},
        {5, 10, 0.00, "L2", -0.31, 0.03, true},
        {5, 10, 0.50, "L2", 0.30, 0.03},
        {5, 10, 0.99, "L2", 0.08, 0.04},
        {5, 10, 0.00, "CL1", -0.42, na},
        {5, 10, 0.50, "CL1", -0.42, na},
        {5, 10, 0.99, "CL1", -0.42, na},
        {5, 10, 0.00, "CL2", 0.18, 0.05, false, true},
        {5, 10, 0.50, "CL2", 0.16, 0.04, false, true},
        {5, 10, 0.99, "CL2", 0.08, 0.05, false, true},
        {5, 10, 0.00, "TC", 0.06, 0.04},
        {5, 10, 0.50, "TC", 0.05, 0.05},
        {5, 10, 0.99, "TC", -0.04, 0.07},
        {5, 10, 0.00, "LB", 0.00, 0.01},
        {5, 10, 0.50, "LB", 0.00, 0.01},
        {5, 10, 0.99, "LB", 0.00, 0.01},
        {5, 10, 0.00, "CLB", 0.00, 0.00},
        {5, 10, 0.50, "CLB", 0.00, 0.00},
        {5, 10, 0.99, "CLB", 0.00, 0.00},
        // k = 10, nu = 3
        {10, 3, 0.00, "L1", -3.58, na},
        {10, 3, 0.50, "L1", -3.58, na},
        {10, 3, 0.99, "L1", -3.74, na},
        {10, 3, 0.00, "L2", 3.89, 0.07},
        {10, 3, 0.50, "L2", 3.72, 0.08},
        {10, 3, 0.99, "L2", 2.89, 0.06},
        {10, 3, 0.00, "CL1", -2.97, na},
        {10, 3, 0.50, "CL1", -2.97, na},
        {10, 3, 0.99, "CL1", -2.98, na},
        {10, 3, 0.00, "CL2", 2.91, 0.08, false, true},
        {10, 3, 0.50, "CL2", 2.76, 0.08, false, true},
        {10, 3, 0.99, "CL2", 2.15, 0.08, false, true},
        {10, 3, 0.00, "TC", 0.16, 0.07},
        {10, 3, 0.50, "TC", 0.03, 0.08},
        {10, 3, 0.99, "TC", -0.48, 0.34},
        {10, 3, 0.00, "LB", 0.00, 0.03},
        {10, 3, 0.50, "LB", 0.00, 0.03},
        {10, 3, 0.99, "LB", 0.00, 0.04},
        {10, 3, 0.00, "CLB", 0.00, 0.01},
        {10, 3, 0.50, "CLB", 0.00, 0.02},
        {10, 3, 0.99, "CLB", 0.01, 0.01},
        // k = 10, nu = 10
        {10, 10, 0.00, "L1", -1.89, na},
        {10, 10, 0.50, "L1", -1.89, na},
        {10, 10, 0.99, "L1", -2.07, na},
        {10, 10, 0.00, "L2", 1.51, 0.04},
        {10, 10, 0.50, "L2", 1.48, 0.04},
        {10, 10, 0.99, "L2", 1.19, 0.04},
        {10, 10, 0.00, "CL1", -1.50, na},
        {10, 10, 0.50, "CL1", -1.50, na},
        {10, 10, 0.99, "CL1", -1.50, na},
        {10, 10, 0.00, "CL2", 1.18, 0.09, false, true},
        {10, 10, 0.50, "CL2", 1.13, 0.08, false, true},
        {10, 10, 0.99, "CL2", 0.97, 0.06, false, true},
        {10, 10, 0.00, "TC", 0.10, 0.07},
        {10, 10, 0.50, "TC", 0.08, 0.06},
        {10, 10, 0.99, "TC", -0.12, 0.05},
        {10, 10, 0.00, "LB", 0.00, 0.01},
        {10, 10, 0.50, "LB", 0.00, 0.01},
        {10, 10, 0.99, "LB", 0.00, 0.02},
        {10, 10, 0.00, "CLB", 0.00, 0.00},
        {10, 10, 0.50, "CLB", 0.00, 0.00},
        {10, 10, 0.99, "CLB", 0.00, 0.00},
    };
    return t;
}

inline const Entry* find(int k, double nu, double delta1, const char* method) {
    for (const auto& e : table())
        if (e.k == k && e.nu == nu && e.delta1 == delta1 &&
            std::string_view(e.method) == method)
            return &e;
    return nullptr;
}

} // namespace refvals
