// verify: run the numerical check suites and emit a JSON or markdown
// report. Exit code 0 iff every check passes, 2 on usage errors.
// Part of skt. SPDX-License-Identifier: MIT
#include <skt/report.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    skt::SuiteConfig cfg;
    std::string format = "json";
    std::string out_path;
    std::vector<std::string> tol_args;

    CLI::App app{"numerical verification suites for symmetric Killing "
                 "2-tensors"};
    app.add_option("SUITE", cfg.suite,
                   "young | products | geometry | cone | prolongation | "
                   "dimensions | sasaki | gallot | invariants | all")
        ->default_str("all");
    app.add_option("--suite", cfg.suite, "same as the positional argument")
        ->excludes("SUITE");
    app.add_option("--model", cfg.model, "sphere | flat | scaled_sphere")
        ->default_str("sphere");
    app.add_option("--n", cfg.n, "model dimension (0 = suite defaults)");
    app.add_option("--radius", cfg.radius,
                   "sphere radius (sectional curvature for scaled_sphere)");
    app.add_option("--structure", cfg.structure, "sasaki | 3sasaki");
    app.add_option("--dim", cfg.dim, "Sasaki sphere dimension, 3 or 7");
    app.add_option("--algebra", cfg.algebra,
                   "so4..so8 | u2 | u3 | su2 | su3 | sp2 | g2 | spin7");
    app.add_option("--seed", cfg.seed, "random seed")->default_str("42");
    app.add_option("--samples", cfg.samples,
                   "trial count override (0 = per-check defaults)");
    app.add_option("--fd-step", cfg.fd_step, "finite-difference step");
    app.add_option("--tol", tol_args, "tolerance override, name=value")
        ->expected(-1);
    app.add_option("--format", format, "json | md")->default_str("json");
    app.add_option("--out", out_path, "write the report to a file");
    app.add_flag("--timings", cfg.timings,
                 "attach wall times (report is no longer rerun-stable)");

    try {
        app.parse(argc, argv);
        for (const std::string& s : tol_args) {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--tol expects name=value: " + s);
            cfg.tol[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
        }
        if (format != "json" && format != "md")
            throw CLI::ValidationError("--format must be json or md");
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        std::vector<skt::CheckReport> checks = skt::run_suite(cfg);
        std::string text = format == "json"
                               ? skt::emit_json(cfg, checks)
                               : skt::emit_markdown(cfg, checks);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) {
                std::cerr << "verify: cannot write " << out_path << "\n";
                return 2;
            }
            f << text;
        }
        return skt::all_pass(checks) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return 2;
    }
}
