/// \file hs2_main.cpp
/// \brief `hs2` command line: reproducible verification campaigns over the
///        shared library's C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hs2/hs2_c.h"

namespace {

using json = nlohmann::ordered_json;

int dispatch(const json& cfg, const std::string& format) {
    char* report = nullptr;
    char* csv = nullptr;
    int exit_code = 2;
    const hs2_status st =
        hs2_run_campaign(cfg.dump().c_str(), &report, &csv, &exit_code);
    if (st == HS2_ERR_PARSE) {
        std::cerr << "config error: " << hs2_last_error() << "\n";
        return 2;
    }
    if (st != HS2_OK) {
        std::cerr << "error: " << hs2_last_error() << "\n";
        return 2;
    }
    if (format == "csv")
        std::cout << csv;
    else
        std::cout << report;
    hs2_string_free(report);
    hs2_string_free(csv);
    return exit_code;
}

json parse_domain(const std::string& domain, int n) {
    // "box" | "unit-box" | "box:H,V" | "ball:R"
    json d;
    if (domain == "unit-box") {
        d["type"] = "box";
        d["unit"] = true;
    } else if (domain.rfind("ball", 0) == 0) {
        d["type"] = "ball";
        d["radius"] = domain.size() > 5 ? std::stod(domain.substr(5)) : 1.0;
    } else if (domain.rfind("box:", 0) == 0) {
        std::istringstream is(domain.substr(4));
        double h = 1.0, v = 1.0;
        char comma;
        is >> h >> comma >> v;
        d["type"] = "box";
        d["half_horizontal"] = h;
        d["half_vertical"] = v;
    } else {
        d["type"] = "box";
    }
    (void)n;
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hs2 - Heisenberg-group sigma_2 convexity and measure toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // Shared options, mirrored into each scenario subcommand.
    struct Common {
        int n = 1;
        std::string field = "sq";
        std::string domain = "box";
        int resolution = 8;
        long samples = 1000;
        std::uint64_t seed = 0;
        std::string out;
        std::string format = "json";
    };

    auto add_common = [](CLI::App* cmd, Common& c, bool with_field = true) {
        cmd->add_option("--n", c.n, "group index n of H^n");
        if (with_field)
            cmd->add_option("--field", c.field,
                            "t | sq | gauge | gauge4 | barrier(R,sigma,m0)");
        cmd->add_option("--domain", c.domain, "box | unit-box | box:H,V | ball:R");
        cmd->add_option("--resolution", c.resolution, "quadrature cells per axis");
        cmd->add_option("--samples", c.samples, "sample count");
        cmd->add_option("--seed", c.seed, "RNG seed (fully determines the report)");
        cmd->add_option("--out", c.out, "report path prefix (<out>.json, <out>.csv)");
        cmd->add_option("--format", c.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run a campaign from a config file");
    run->add_option("config", config_path, "JSON campaign config")->required();

    Common conv, meas, comp, osc, tay, apx, weak;
    CLI::App* c_conv = app.add_subcommand("check-convexity", "classify a field");
    add_common(c_conv, conv);
    CLI::App* c_meas = app.add_subcommand("measure", "mu(u) of a region");
    add_common(c_meas, meas);
    double expected = 0.0;
    bool has_expected = false;
    c_meas->add_option("--expected", expected, "expected mu value")
        ->each([&](const std::string&) { has_expected = true; });
    CLI::App* c_comp = app.add_subcommand("compare", "comparison-principle campaign");
    add_common(c_comp, comp, false);
    long pairs = 20;
    c_comp->add_option("--pairs", pairs, "number of admissible pairs");
    CLI::App* c_osc = app.add_subcommand("oscillation", "oscillation-estimate ratios");
    add_common(c_osc, osc, false);
    double sigma = 0.5, R = 1.0;
    c_osc->add_option("--sigma", sigma, "inner/outer radius ratio");
    c_osc->add_option("--R", R, "outer gauge-ball radius");
    CLI::App* c_tay = app.add_subcommand("taylor", "weighted Taylor decay table");
    add_common(c_tay, tay);
    std::string expect = "decay";
    c_tay->add_option("--expect", expect, "decay | zero");
    CLI::App* c_apx = app.add_subcommand("appendix", "sigma_2 gradient PSD property");
    add_common(c_apx, apx, false);
    int dim = 4;
    c_apx->add_option("--dim", dim, "matrix dimension");
    CLI::App* c_weak = app.add_subcommand("weak-convergence", "mollification table");
    add_common(c_weak, weak);
    double eps0 = 0.4;
    int steps = 5;
    c_weak->add_option("--eps0", eps0, "initial mollification scale");
    c_weak->add_option("--steps", steps, "geometric schedule length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors share the config-error status
    }

    if (run->parsed()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "config error: cannot open " << config_path << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        json cfg;
        try {
            cfg = json::parse(buf.str());
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
        return dispatch(cfg, cfg.value("format", "json"));
    }

    auto base = [&](const Common& c, const std::string& scenario, bool with_field) {
        json cfg;
        cfg["scenario"] = scenario;
        cfg["n"] = c.n;
        if (with_field) cfg["field"] = c.field;
        cfg["domain"] = parse_domain(c.domain, c.n);
        cfg["resolution"] = c.resolution;
        cfg["samples"] = c.samples;
        cfg["seed"] = c.seed;
        if (!c.out.empty()) cfg["out"] = c.out;
        return cfg;
    };

    if (c_conv->parsed()) return dispatch(base(conv, "convexity", true), conv.format);
    if (c_meas->parsed()) {
        json cfg = base(meas, "measure", true);
        if (has_expected) cfg["expected"] = expected;
        return dispatch(cfg, meas.format);
    }
    if (c_comp->parsed()) {
        json cfg = base(comp, "compare", false);
        cfg["pairs"] = pairs;
        return dispatch(cfg, comp.format);
    }
    if (c_osc->parsed()) {
        json cfg = base(osc, "oscillation", false);
        cfg["sigma"] = sigma;
        cfg["R"] = R;
        return dispatch(cfg, osc.format);
    }
    if (c_tay->parsed()) {
        json cfg = base(tay, "taylor", true);
        cfg["expect"] = expect;
        cfg["resolution"] = tay.resolution == 8 ? 24 : tay.resolution;
        return dispatch(cfg, tay.format);
    }
    if (c_apx->parsed()) {
        json cfg = base(apx, "appendix", false);
        cfg["dim"] = dim;
        return dispatch(cfg, apx.format);
    }
    if (c_weak->parsed()) {
        json cfg = base(weak, "weak-convergence", true);
        cfg["eps0"] = eps0;
        cfg["steps"] = steps;
        cfg["resolution"] = weak.resolution == 8 ? 6 : weak.resolution;
        return dispatch(cfg, weak.format);
    }
    return 2;
}
