#include "evidencia/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "evidencia/bridge.hpp"
#include "evidencia/copula.hpp"
#include "evidencia/parallel.hpp"

namespace evidencia {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream purposes for seed derivation; changing one method's draws must
// never perturb another's.
constexpr std::uint64_t kStreamPosterior = 1;
constexpr std::uint64_t kStreamL2 = 2;
constexpr std::uint64_t kStreamCL2 = 3;
constexpr std::uint64_t kStreamLB = 4;
constexpr std::uint64_t kStreamCLB = 5;
constexpr std::uint64_t kStreamGlmData = 11;
constexpr std::uint64_t kStreamGlmChain = 12;
constexpr std::uint64_t kStreamGsChain = 13;
constexpr std::uint64_t kStreamGsBridge = 14;

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t hash_matrix(const Mat& m) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) h = mix64(h ^ bits(m(i, j)));
    return h;
}

bool is_stochastic(Method m) {
    return m == Method::L2 || m == Method::CL2 || m == Method::TC || m == Method::LB ||
           m == Method::CLB;
}

std::vector<Method> canonical_methods(std::vector<Method> methods) {
    std::sort(methods.begin(), methods.end(),
              [](Method a, Method b) { return static_cast<int>(a) < static_cast<int>(b); });
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    return methods;
}

void aggregate_moments(CellResult& row) {
    if (!row.error.empty()) return;
    long n = 0;
    double acc = 0.0;
    for (double v : row.values)
        if (std::isfinite(v)) {
            acc += v;
            ++n;
        }
    if (n == 0) return;
    double mean = acc / static_cast<double>(n);
    row.mean = mean;
    if (n >= 2) {
        double ss = 0.0;
        for (double v : row.values)
            if (std::isfinite(v)) ss += (v - mean) * (v - mean);
        row.sd = std::sqrt(ss / static_cast<double>(n - 1));
    }
}

std::string format_double(double v, const char* fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t parse_hash_hex(const std::string& s) {
    return std::stoull(s, nullptr, 16);
}

bool values_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        bool both_nan = std::isnan(a[i]) && std::isnan(b[i]);
        if (!both_nan && a[i] != b[i]) return false;
    }
    return true;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::L1: return "L1";
        case Method::L2: return "L2";
        case Method::CL1: return "CL1";
        case Method::CL2: return "CL2";
        case Method::TC: return "TC";
        case Method::LB: return "LB";
        case Method::CLB: return "CLB";
        case Method::GS: return "GS";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& name) {
    for (Method m : {Method::L1, Method::L2, Method::CL1, Method::CL2, Method::TC, Method::LB,
                     Method::CLB, Method::GS})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

BenchmarkConfig desk_profile(BenchmarkConfig config) {
    config.replicates = 10;
    config.s = 5000;
    config.cap_s = 5000;
    return config;
}

bool operator==(const CellResult& a, const CellResult& b) {
    return a.nu == b.nu && a.delta1 == b.delta1 && a.k == b.k && a.method == b.method &&
           a.replicates == b.replicates && values_equal(a.values, b.values) &&
           a.sample_hashes == b.sample_hashes && a.mean == b.mean && a.sd == b.sd &&
           a.diagnostics == b.diagnostics && a.notes == b.notes && a.error == b.error;
}

bool BenchmarkReport::any_failed() const {
    return std::any_of(cells.begin(), cells.end(),
                       [](const CellResult& c) { return !c.error.empty(); });
}

bool operator==(const BenchmarkReport& a, const BenchmarkReport& b) {
    return a.kind == b.kind && a.master_seed == b.master_seed && a.s == b.s &&
           a.cap_s == b.cap_s && a.replicates == b.replicates && a.extra == b.extra &&
           a.cells == b.cells;
}

namespace {

struct CellSpec {
    double nu = 0.0;
    double delta1 = 0.0;
    int k = 0;
    TargetModel target;
    ModeSummary mode;
    bool has_mode = false;
    std::string mode_error;
    double mode_seconds = 0.0;
};

struct UnitOutcome {
    std::vector<double> value;             // per stochastic method
    std::vector<std::string> error;
    std::vector<double> ess_num, ess_den;  // NaN when not a bridge method
    std::vector<double> secs;
    std::vector<long> clamps;
    std::uint64_t hash = 0;
    std::string draw_error;
};

} // namespace

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    if (config.nu_list.empty() || config.delta_list.empty() || config.k_list.empty())
        throw std::invalid_argument("run_benchmark: empty grid");
    if (config.replicates < 1) throw std::invalid_argument("run_benchmark: replicates must be >= 1");
    if (config.s < 100 || config.cap_s < 100)
        throw std::invalid_argument("run_benchmark: s and S must be >= 100");
    if (config.methods.empty()) throw std::invalid_argument("run_benchmark: no methods requested");
    const auto methods = canonical_methods(config.methods);
    if (std::find(methods.begin(), methods.end(), Method::GS) != methods.end())
        throw std::invalid_argument("run_benchmark: GS is only available in the GLM demo");

    std::vector<Method> stochastic;
    for (Method m : methods)
        if (is_stochastic(m)) stochastic.push_back(m);
    const bool want_mode =
        std::find(methods.begin(), methods.end(), Method::L1) != methods.end() ||
        std::find(methods.begin(), methods.end(), Method::CL1) != methods.end() ||
        std::find(methods.begin(), methods.end(), Method::LB) != methods.end();

    std::vector<CellSpec> cells;
    for (double nu : config.nu_list)
        for (double d : config.delta_list)
            for (int k : config.k_list) {
                CellSpec c;
                c.nu = nu;
                c.delta1 = d;
                c.k = k;
                c.target = make_skewt_target(k, nu, d);
                cells.push_back(std::move(c));
            }

    if (want_mode)
        for (auto& c : cells) {
            auto t0 = Clock::now();
            try {
                c.mode = find_mode(c.target, Vec::Zero(c.k));
                c.has_mode = true;
            } catch (const std::exception& e) {
                c.mode_error = e.what();
            }
            c.mode_seconds = seconds_since(t0);
        }

    // Stochastic work: one unit per (cell, replicate), writing only its slot.
    const int n_cells = static_cast<int>(cells.size());
    const int reps = config.replicates;
    const int n_sto = static_cast<int>(stochastic.size());
    std::vector<UnitOutcome> slots(static_cast<size_t>(n_cells) * reps);
    if (n_sto > 0) {
        parallel_for(n_cells * reps, [&](int unit) {
            const CellSpec& cell = cells[unit / reps];
            const int rep = unit % reps;
            UnitOutcome& out = slots[unit];
            out.value.assign(n_sto, kNaN);
            out.error.assign(n_sto, "");
            out.ess_num.assign(n_sto, kNaN);
            out.ess_den.assign(n_sto, kNaN);
            out.secs.assign(n_sto, 0.0);
            out.clamps.assign(n_sto, 0);

            auto child = [&](std::uint64_t purpose) {
                return derive_seed({config.master_seed, bits(cell.nu), bits(cell.delta1),
                                    static_cast<std::uint64_t>(cell.k),
                                    static_cast<std::uint64_t>(rep), purpose});
            };

            Mat draws;
            try {
                Rng rng(child(kStreamPosterior));
                draws = cell.target.sampler(rng, config.s);
                out.hash = hash_matrix(draws);
            } catch (const std::exception& e) {
                out.draw_error = e.what();
                return;
            }

            for (int mi = 0; mi < n_sto; ++mi) {
                auto t0 = Clock::now();
                try {
                    switch (stochastic[mi]) {
                        case Method::L2: {
                            Rng rng(child(kStreamL2));
                            out.value[mi] = laplace_sim_logml(cell.target, draws, rng);
                            break;
                        }
                        case Method::CL2: {
                            Rng rng(child(kStreamCL2));
                            auto fit = fit_gaussian_copula_sim(rng, draws);
                            out.value[mi] = copula_logml(cell.target, fit);
                            break;
                        }
                        case Method::TC: {
                            auto fit = fit_t_copula(draws, default_t_copula_grid());
                            out.value[mi] = t_copula_logml(cell.target, fit);
                            break;
                        }
                        case Method::LB: {
                            if (!cell.has_mode)
                                throw std::runtime_error("mode finding failed: " +
                                                         cell.mode_error);
                            Rng rng(child(kStreamLB));
                            auto est = laplace_bridge(cell.target, draws, cell.mode, rng,
                                                      config.cap_s);
                            out.value[mi] = est.log_ml;
                            out.ess_num[mi] = est.numerator_ess;
                            out.ess_den[mi] = est.denominator_ess;
                            break;
                        }
                        case Method::CLB: {
                            Rng rng(child(kStreamCLB));
                            long clamp = 0;
                            auto est = copula_bridge(cell.target, draws, rng, config.cap_s,
                                                     &clamp);
                            out.value[mi] = est.log_ml;
                            out.ess_num[mi] = est.numerator_ess;
                            out.ess_den[mi] = est.denominator_ess;
                            out.clamps[mi] = clamp;
                            break;
                        }
                        default: break;
                    }
                } catch (const std::exception& e) {
                    out.error[mi] = e.what();
                }
                out.secs[mi] = seconds_since(t0);
            }
        });
    }

    BenchmarkReport report;
    report.kind = "skewt";
    report.master_seed = config.master_seed;
    report.s = config.s;
    report.cap_s = config.cap_s;
    report.replicates = config.replicates;

    for (int ci = 0; ci < n_cells; ++ci) {
        const CellSpec& cell = cells[ci];
        for (Method m : methods) {
            CellResult row;
            row.nu = cell.nu;
            row.delta1 = cell.delta1;
            row.k = cell.k;
            row.method = method_name(m);

            if (m == Method::L1 || m == Method::CL1) {
                row.replicates = 1;
                auto t0 = Clock::now();
                if (!cell.has_mode) {
                    row.error = "mode finding failed: " + cell.mode_error;
                } else {
                    try {
                        double v = m == Method::L1
                                       ? laplace_logml(cell.mode)
                                       : copula_logml(cell.target, fit_gaussian_copula_analytic(
                                                                       cell.target, cell.mode));
                        row.values.push_back(v);
                        row.mean = v;
                    } catch (const std::exception& e) {
                        row.error = e.what();
                    }
                }
                row.seconds = seconds_since(t0) + cell.mode_seconds;
                report.cells.push_back(std::move(row));
                continue;
            }

            const int mi = static_cast<int>(std::find(stochastic.begin(), stochastic.end(), m) -
                                            stochastic.begin());
            row.replicates = reps;
            double ess_num = 0.0, ess_den = 0.0;
            long ess_count = 0, clamp_total = 0;
            for (int r = 0; r < reps; ++r) {
                const UnitOutcome& out = slots[static_cast<size_t>(ci) * reps + r];
                std::string err = !out.draw_error.empty()
                                      ? "posterior sampling failed: " + out.draw_error
                                      : out.error.empty() ? "" : out.error[mi];
                if (!err.empty() && row.error.empty())
                    row.error = "replicate " + std::to_string(r) + ": " + err;
                row.values.push_back(out.value.empty() ? kNaN : out.value[mi]);
                row.sample_hashes.push_back(out.hash);
                if (!out.secs.empty()) row.seconds += out.secs[mi];
                if (!out.ess_num.empty() && std::isfinite(out.ess_num[mi])) {
                    ess_num += out.ess_num[mi];
                    ess_den += out.ess_den[mi];
                    ++ess_count;
                }
                if (!out.clamps.empty()) clamp_total += out.clamps[mi];
            }
            if (ess_count > 0) {
                row.diagnostics["ess_num_mean"] = ess_num / static_cast<double>(ess_count);
                row.diagnostics["ess_den_mean"] = ess_den / static_cast<double>(ess_count);
            }
            if (m == Method::CLB) row.diagnostics["clamp_count"] = static_cast<double>(clamp_total);
            aggregate_moments(row);
            report.cells.push_back(std::move(row));
        }
    }
    return report;
}

BenchmarkReport run_glm_demo(std::uint64_t seed, int n, int q, LinkKind link,
                             const std::vector<Method>& methods_in, int s, int cap_s) {
    if (s < 100 || cap_s < 100) throw std::invalid_argument("run_glm_demo: s and S must be >= 100");
    auto methods = canonical_methods(methods_in);
    methods.erase(std::remove(methods.begin(), methods.end(), Method::GS), methods.end());
    if (methods.empty()) throw std::invalid_argument("run_glm_demo: no methods requested");

    Rng rng_data(derive_seed({seed, kStreamGlmData}));
    GlmTarget glm = make_glm_target(rng_data, n, q, link);
    const TargetModel& target = glm.model;
    const ModeSummary& mode = glm.mode;

    BenchmarkReport report;
    report.kind = "glm";
    report.master_seed = seed;
    report.s = s;
    report.cap_s = cap_s;
    report.replicates = 1;
    {
        std::ostringstream extra;
        extra << "n=" << n << " q=" << q
              << " link=" << (link == LinkKind::Logit ? "logit" : "robit3");
        report.extra = extra.str();
    }

    bool any_sto = std::any_of(methods.begin(), methods.end(), is_stochastic);
    Mat draws;
    std::uint64_t draw_hash = 0;
    double mh_acceptance = kNaN;
    bool mh_ok = true;
    if (any_sto) {
        Rng rng(derive_seed({seed, kStreamGlmChain}));
        McmcResult chain = rw_metropolis(rng, target, mode, s + s / 5, s / 5);
        draws = std::move(chain.draws);
        draw_hash = hash_matrix(draws);
        mh_acceptance = chain.acceptance_rate;
        mh_ok = chain.tuned_ok;
    }

    auto child = [&](std::uint64_t purpose) { return derive_seed({seed, purpose}); };
    for (Method m : methods) {
        CellResult row;
        row.method = method_name(m);
        row.replicates = 1;
        auto t0 = Clock::now();
        try {
            double v = kNaN;
            switch (m) {
                case Method::L1: v = laplace_logml(mode); break;
                case Method::CL1:
                    v = copula_logml(target, fit_gaussian_copula_analytic(target, mode));
                    break;
                case Method::L2: {
                    Rng rng(child(kStreamL2));
                    v = laplace_sim_logml(target, draws, rng);
                    break;
                }
                case Method::CL2: {
                    Rng rng(child(kStreamCL2));
                    v = copula_logml(target, fit_gaussian_copula_sim(rng, draws));
                    break;
                }
                case Method::TC: {
                    auto fit = fit_t_copula(draws, default_t_copula_grid());
                    v = t_copula_logml(target, fit);
                    break;
                }
                case Method::LB: {
                    Rng rng(child(kStreamLB));
                    auto est = laplace_bridge(target, draws, mode, rng, cap_s);
                    v = est.log_ml;
                    row.diagnostics["ess_num_mean"] = est.numerator_ess;
                    row.diagnostics["ess_den_mean"] = est.denominator_ess;
                    break;
                }
                case Method::CLB: {
                    Rng rng(child(kStreamCLB));
                    long clamp = 0;
                    auto est = copula_bridge(target, draws, rng, cap_s, &clamp);
                    v = est.log_ml;
                    row.diagnostics["ess_num_mean"] = est.numerator_ess;
                    row.diagnostics["ess_den_mean"] = est.denominator_ess;
                    row.diagnostics["clamp_count"] = static_cast<double>(clamp);
                    break;
                }
                default: break;
            }
            row.values.push_back(v);
            row.mean = v;
            if (is_stochastic(m)) {
                row.sample_hashes.push_back(draw_hash);
                row.diagnostics["mh_acceptance"] = mh_acceptance;
                if (!mh_ok) row.notes.push_back("MH acceptance outside [0.05, 0.7]");
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.seconds = seconds_since(t0);
        report.cells.push_back(std::move(row));
    }

    // Gold standard: Laplace bridge on a dedicated 10^5-draw chain.
    {
        CellResult row;
        row.method = method_name(Method::GS);
        row.replicates = 1;
        auto t0 = Clock::now();
        try {
            const int gs_s = 100000;
            Rng rng_chain(derive_seed({seed, kStreamGsChain}));
            McmcResult chain = rw_metropolis(rng_chain, target, mode, gs_s + gs_s / 5, gs_s / 5);
            Rng rng_bridge(derive_seed({seed, kStreamGsBridge}));
            auto est = laplace_bridge(target, chain.draws, mode, rng_bridge, gs_s);
            row.values.push_back(est.log_ml);
            row.mean = est.log_ml;
            row.sample_hashes.push_back(hash_matrix(chain.draws));
            row.diagnostics["ess_num_mean"] = est.numerator_ess;
            row.diagnostics["ess_den_mean"] = est.denominator_ess;
            row.diagnostics["mh_acceptance"] = chain.acceptance_rate;
            if (!chain.tuned_ok) row.notes.push_back("MH acceptance outside [0.05, 0.7]");
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.seconds = seconds_since(t0);
        report.cells.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_csv(const BenchmarkReport& report) {
    std::ostringstream os;
    os << "nu,delta1,k,method,mean,sd,replicates,seconds,error\n";
    const bool grid = report.kind == "skewt";
    for (const auto& c : report.cells) {
        if (grid)
            os << format_double(c.nu, "%g") << ',' << format_double(c.delta1, "%g") << ','
               << c.k << ',';
        else
            os << ",,,";
        os << c.method << ',' << (c.mean ? format_double(*c.mean) : "NA") << ','
           << (c.sd ? format_double(*c.sd) : "NA") << ',' << c.replicates << ','
           << format_double(c.seconds, "%.3f") << ',' << csv_escape(c.error) << '\n';
    }
    return os.str();
}

std::string markdown_cell(const CellResult& c) {
    if (!c.mean) return "NA";
    std::string s = format_double(*c.mean, "%.2f");
    if (c.sd) s += " (" + format_double(*c.sd, "%.2f") + ")";
    return s;
}

std::string render_markdown(const BenchmarkReport& report) {
    std::ostringstream os;
    if (report.kind == "glm") {
        os << "# GLM demo (" << report.extra << ", seed " << report.master_seed << ")\n\n";
        os << "| method | estimate | sd | notes |\n|---|---|---|---|\n";
        for (const auto& c : report.cells) {
            std::string note = c.error.empty() ? "" : "failed: " + c.error;
            for (const auto& n : c.notes) note += (note.empty() ? "" : "; ") + n;
            os << "| " << c.method << " | " << (c.mean ? format_double(*c.mean, "%.3f") : "NA")
               << " | " << (c.sd ? format_double(*c.sd, "%.3f") : "NA") << " | " << note
               << " |\n";
        }
        return os.str();
    }

    // Group rows: per k one table, columns the (nu, delta1) combinations.
    std::vector<int> ks;
    std::vector<std::pair<double, double>> cols;
    std::vector<std::string> methods;
    for (const auto& c : report.cells) {
        if (std::find(ks.begin(), ks.end(), c.k) == ks.end()) ks.push_back(c.k);
        if (std::find(cols.begin(), cols.end(), std::make_pair(c.nu, c.delta1)) == cols.end())
            cols.emplace_back(c.nu, c.delta1);
        if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
            methods.push_back(c.method);
    }
    auto find_cell = [&](int k, double nu, double d, const std::string& m) -> const CellResult* {
        for (const auto& c : report.cells)
            if (c.k == k && c.nu == nu && c.delta1 == d && c.method == m) return &c;
        return nullptr;
    };
    os << "# Skew-t benchmark (seed " << report.master_seed << ", s=" << report.s
       << ", S=" << report.cap_s << ", replicates=" << report.replicates << ")\n";
    for (int k : ks) {
        os << "\n## k = " << k << "\n\n| method |";
        for (auto [nu, d] : cols)
            os << " nu=" << format_double(nu, "%g") << ", d1=" << format_double(d, "%g") << " |";
        os << "\n|---|";
        for (size_t i = 0; i < cols.size(); ++i) os << "---|";
        os << "\n";
        for (const auto& m : methods) {
            os << "| " << m << " |";
            for (auto [nu, d] : cols) {
                const CellResult* c = find_cell(k, nu, d, m);
                os << ' ' << (c ? markdown_cell(*c) : "NA") << " |";
            }
            os << "\n";
        }
    }
    return os.str();
}

json cell_to_json(const CellResult& c) {
    json j;
    j["nu"] = c.nu;
    j["delta1"] = c.delta1;
    j["k"] = c.k;
    j["method"] = c.method;
    j["replicates"] = c.replicates;
    json vals = json::array();
    for (double v : c.values) {
        if (std::isnan(v))
            vals.push_back(nullptr);
        else
            vals.push_back(v);
    }
    j["values"] = std::move(vals);
    json hashes = json::array();
    for (auto h : c.sample_hashes) hashes.push_back(hash_hex(h));
    j["sample_hashes"] = std::move(hashes);
    if (c.mean) j["mean"] = *c.mean;
    if (c.sd) j["sd"] = *c.sd;
    j["diagnostics"] = c.diagnostics;
    j["notes"] = c.notes;
    j["error"] = c.error;
    return j;
}

CellResult cell_from_json(const json& j) {
    CellResult c;
    c.nu = j.at("nu").get<double>();
    c.delta1 = j.at("delta1").get<double>();
    c.k = j.at("k").get<int>();
    c.method = j.at("method").get<std::string>();
    c.replicates = j.at("replicates").get<int>();
    for (const auto& v : j.at("values")) c.values.push_back(v.is_null() ? kNaN : v.get<double>());
    for (const auto& h : j.at("sample_hashes"))
        c.sample_hashes.push_back(parse_hash_hex(h.get<std::string>()));
    if (j.contains("mean")) c.mean = j.at("mean").get<double>();
    if (j.contains("sd")) c.sd = j.at("sd").get<double>();
    c.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    c.notes = j.at("notes").get<std::vector<std::string>>();
    c.error = j.at("error").get<std::string>();
    return c;
}

std::string render_json(const BenchmarkReport& report) {
    json j;
    j["kind"] = report.kind;
    j["master_seed"] = report.master_seed;
    j["s"] = report.s;
    j["S"] = report.cap_s;
    j["replicates"] = report.replicates;
    j["extra"] = report.extra;
    json cells = json::array();
    for (const auto& c : report.cells) cells.push_back(cell_to_json(c));
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

} // namespace

std::string render_report(const BenchmarkReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: return render_csv(report);
        case ReportFormat::Markdown: return render_markdown(report);
        case ReportFormat::Json: return render_json(report);
    }
    return "";
}

void emit_report(const BenchmarkReport& report, ReportFormat format, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_report: cannot open " + path);
    os << render_report(report, format);
    if (!os) throw std::runtime_error("emit_report: write failed for " + path);
}

BenchmarkReport parse_json_report(const std::string& text) {
    json j = json::parse(text);
    BenchmarkReport r;
    r.kind = j.at("kind").get<std::string>();
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    r.s = j.at("s").get<int>();
    r.cap_s = j.at("S").get<int>();
    r.replicates = j.at("replicates").get<int>();
    r.extra = j.at("extra").get<std::string>();
    for (const auto& cj : j.at("cells")) r.cells.push_back(cell_from_json(cj));
    return r;
}

} // namespace evidencia
