#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evidencia/harness.hpp"

namespace {

using namespace evidencia;

std::vector<Method> to_methods(const std::vector<std::string>& names) {
    std::vector<Method> out;
    for (const auto& n : names) {
        auto m = parse_method(n);
        if (!m) throw CLI::ValidationError("--methods", "unknown method '" + n + "'");
        out.push_back(*m);
    }
    return out;
}

ReportFormat to_format(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "md" || name == "markdown") return ReportFormat::Markdown;
    if (name == "json") return ReportFormat::Json;
    throw CLI::ValidationError("--format", "unknown format '" + name + "'");
}

int finish(const BenchmarkReport& report, const std::string& format, const std::string& out) {
    if (out.empty())
        std::cout << render_report(report, to_format(format));
    else
        emit_report(report, to_format(format), out);
    if (report.any_failed()) {
        std::fprintf(stderr, "bench: some cells failed (see error column)\n");
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Marginal-likelihood estimator benchmark"};
    app.require_subcommand(1);

    // skewt subcommand
    auto* skewt = app.add_subcommand("skewt", "Skew-t benchmark grid");
    BenchmarkConfig config;
    std::vector<std::string> method_names;
    std::string profile = "full", format = "csv", out_path;
    int opt_s = 0, opt_cap_s = 0, opt_reps = 0;
    skewt->add_option("--nu", config.nu_list, "Degrees-of-freedom grid")->delimiter(',');
    skewt->add_option("--delta", config.delta_list, "Skewness grid")->delimiter(',');
    skewt->add_option("--k", config.k_list, "Dimension grid")->delimiter(',');
    skewt->add_option("--methods", method_names, "Methods (L1,L2,CL1,CL2,TC,LB,CLB)")
        ->delimiter(',');
    auto* so_s = skewt->add_option("--s", opt_s, "Posterior draws per replicate");
    auto* so_cap = skewt->add_option("--S", opt_cap_s, "Proposal draws for bridge methods");
    auto* so_reps = skewt->add_option("--replicates", opt_reps, "Replicates per cell");
    skewt->add_option("--seed", config.master_seed, "Master seed");
    skewt->add_option("--out", out_path, "Output path (stdout when omitted)");
    skewt->add_option("--format", format, "csv|md|json")->check(CLI::IsMember({"csv", "md", "markdown", "json"}));
    skewt->add_option("--profile", profile, "full|desk")->check(CLI::IsMember({"full", "desk"}));

    // glm subcommand
    auto* glm = app.add_subcommand("glm", "Synthetic GLM demo with gold-standard row");
    int n = 190, q = 11;
    std::string link = "logit";
    std::vector<std::string> glm_method_names;
    std::uint64_t glm_seed = 20260814;
    int glm_s = 10000, glm_cap_s = 10000;
    std::string glm_format = "csv", glm_out;
    glm->add_option("--n", n, "Observations");
    glm->add_option("--q", q, "Coefficients (including intercept)");
    glm->add_option("--link", link, "logit|robit3")->check(CLI::IsMember({"logit", "robit3"}));
    glm->add_option("--methods", glm_method_names, "Methods (GS always added)")->delimiter(',');
    glm->add_option("--s", glm_s, "Posterior draws (burn-in adds s/5)");
    glm->add_option("--S", glm_cap_s, "Proposal draws for bridge methods");
    glm->add_option("--seed", glm_seed, "Seed");
    glm->add_option("--out", glm_out, "Output path (stdout when omitted)");
    glm->add_option("--format", glm_format, "csv|md|json")->check(CLI::IsMember({"csv", "md", "markdown", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (skewt->parsed()) {
            if (!method_names.empty()) config.methods = to_methods(method_names);
            if (profile == "desk") config = desk_profile(config);
            if (so_s->count()) config.s = opt_s;
            if (so_cap->count()) config.cap_s = opt_cap_s;
            if (so_reps->count()) config.replicates = opt_reps;
            return finish(run_benchmark(config), format, out_path);
        }
        std::vector<Method> methods{Method::L1, Method::L2,  Method::CL1, Method::CL2,
                                    Method::TC, Method::LB, Method::CLB};
        if (!glm_method_names.empty()) methods = to_methods(glm_method_names);
        LinkKind lk = link == "logit" ? LinkKind::Logit : LinkKind::Robit3;
        return finish(run_glm_demo(glm_seed, n, q, lk, methods, glm_s, glm_cap_s), glm_format,
                      glm_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bench: fatal: %s\n", e.what());
        return 1;
    }
}
