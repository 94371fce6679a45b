#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evidencia/targets.hpp"

namespace evidencia {

// GS is the gold-standard row of the GLM demo (long Laplace-bridge run);
// benchmark grids accept only the seven estimator methods.
enum class Method { L1, L2, CL1, CL2, TC, LB, CLB, GS };

std::string method_name(Method m);
std::optional<Method> parse_method(const std::string& name);

struct BenchmarkConfig {
    std::vector<double> nu_list{3.0, 10.0};
    std::vector<double> delta_list{0.0, 0.5, 0.99};
    std::vector<int> k_list{2, 5, 10};
    std::vector<Method> methods{Method::L1, Method::L2, Method::CL1, Method::CL2,
                                Method::TC, Method::LB, Method::CLB};
    int s = 10000;          // posterior draws per replicate
    int cap_s = 10000;      // proposal draws for the bridge methods
    int replicates = 50;
    std::uint64_t master_seed = 20260814;
};

// CI-scale profile: replicates=10, s=S=5000.
BenchmarkConfig desk_profile(BenchmarkConfig config);

// One (cell, method) row. Deterministic methods (L1, CL1) run once, so their
// rows carry replicates=1 and no sd; stochastic rows carry one value and one
// posterior-sample hash per replicate (value NaN where that replicate
// failed). `seconds` is total method compute time and is excluded from the
// JSON payload and from equality so reports stay byte-reproducible.
struct CellResult {
    double nu = 0.0;
    double delta1 = 0.0;
    int k = 0;
    std::string method;
    int replicates = 0;
    std::vector<double> values;
    std::vector<std::uint64_t> sample_hashes;
    std::optional<double> mean;
    std::optional<double> sd;  // unbiased; absent when replicates < 2
    std::map<std::string, double> diagnostics;
    std::vector<std::string> notes;
    std::string error;  // nonempty marks the row failed
    double seconds = 0.0;
};

bool operator==(const CellResult& a, const CellResult& b);

struct BenchmarkReport {
    std::string kind;  // "skewt" or "glm"
    std::uint64_t master_seed = 0;
    int s = 0;
    int cap_s = 0;
    int replicates = 0;
    std::string extra;  // kind-specific summary, e.g. "n=190 q=11 link=logit"
    std::vector<CellResult> cells;

    bool any_failed() const;
};

bool operator==(const BenchmarkReport& a, const BenchmarkReport& b);

// Runs the skew-t grid. Within one (cell, replicate) every stochastic method
// sees the same posterior draw matrix; all streams derive from
// (master_seed, cell values, replicate, purpose), so results do not depend
// on scheduling, thread count, or which other methods run.
BenchmarkReport run_benchmark(const BenchmarkConfig& config);

// Synthetic GLM demo: posterior draws by random-walk Metropolis (burn-in
// s/5), requested methods plus the GS row (Laplace bridge, s=S=100000).
BenchmarkReport run_glm_demo(std::uint64_t seed, int n, int q, LinkKind link,
                             const std::vector<Method>& methods, int s = 10000,
                             int cap_s = 10000);

enum class ReportFormat { Csv, Markdown, Json };

// Rendered report text. CSV columns: nu, delta1, k, method, mean, sd,
// replicates, seconds, error (absent values rendered NA). Markdown mirrors
// the "mean (sd)" table layout. JSON carries the raw per-replicate values
// and diagnostics but no timings.
std::string render_report(const BenchmarkReport& report, ReportFormat format);

// render_report to a file; I/O failures throw.
void emit_report(const BenchmarkReport& report, ReportFormat format, const std::string& path);

BenchmarkReport parse_json_report(const std::string& text);

} // namespace evidencia
