#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evidencia/harness.hpp"

// Ad-hoc single-target, single-method estimate. The target spec is JSON:
//   {"kind": "skewt", "k": 2, "nu": 3, "delta1": 0}
//   {"kind": "glm", "n": 50, "q": 5, "link": "logit"}

int main(int argc, char** argv) {
    using namespace evidencia;
    using json = nlohmann::ordered_json;

    CLI::App app{"One-off marginal-likelihood estimate"};
    std::string spec_path, method_name_str;
    int s = 10000, cap_s = 10000;
    std::uint64_t seed = 20260814;
    app.add_option("--target-spec", spec_path, "Target description (JSON file)")->required();
    app.add_option("--method", method_name_str, "L1|L2|CL1|CL2|TC|LB|CLB (GS for glm)")
        ->required();
    app.add_option("--s", s, "Posterior draws");
    app.add_option("--S", cap_s, "Proposal draws for bridge methods");
    app.add_option("--seed", seed, "Seed");
    CLI11_PARSE(app, argc, argv);

    try {
        auto method = parse_method(method_name_str);
        if (!method) throw std::runtime_error("unknown method '" + method_name_str + "'");

        std::ifstream is(spec_path);
        if (!is) throw std::runtime_error("cannot open " + spec_path);
        std::stringstream buf;
        buf << is.rdbuf();
        json spec = json::parse(buf.str());
        const std::string kind = spec.at("kind").get<std::string>();

        BenchmarkReport report;
        if (kind == "skewt") {
            if (*method == Method::GS)
                throw std::runtime_error("GS applies only to glm targets");
            BenchmarkConfig config;
            config.k_list = {spec.at("k").get<int>()};
            config.nu_list = {spec.at("nu").get<double>()};
            config.delta_list = {spec.at("delta1").get<double>()};
            config.methods = {*method};
            config.replicates = 1;
            config.s = s;
            config.cap_s = cap_s;
            config.master_seed = seed;
            report = run_benchmark(config);
        } else if (kind == "glm") {
            const std::string link = spec.value("link", std::string("logit"));
            if (link != "logit" && link != "robit3")
                throw std::runtime_error("unknown link '" + link + "'");
            std::vector<Method> methods{*method == Method::GS ? Method::L1 : *method};
            report = run_glm_demo(seed, spec.at("n").get<int>(), spec.at("q").get<int>(),
                                  link == "logit" ? LinkKind::Logit : LinkKind::Robit3, methods,
                                  s, cap_s);
        } else {
            throw std::runtime_error("unknown target kind '" + kind + "'");
        }

        for (const auto& cell : report.cells) {
            if (cell.method != method_name(*method)) continue;
            if (!cell.error.empty()) throw std::runtime_error(cell.error);
            json out;
            out["kind"] = kind;
            out["method"] = cell.method;
            out["log_ml"] = cell.values.at(0);
            out["s"] = s;
            out["S"] = cap_s;
            out["seed"] = seed;
            if (!cell.diagnostics.empty()) out["diagnostics"] = cell.diagnostics;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        throw std::runtime_error("method row missing from report");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "estimate: fatal: %s\n", e.what());
        return 1;
    }
}
