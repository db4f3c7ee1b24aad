// Suite runner for the verify tool: configuration, per-check reports with
// pass/fail semantics, and JSON / markdown emission.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skt {

struct SuiteConfig {
    std::string suite = "all";
    std::string model = "sphere"; // sphere | flat | scaled_sphere
    int n = 0;                    // model dimension; 0 = per-suite defaults
    double radius = 1.0;          // sphere radius / sectional for scaled
    std::string structure; // sasaki | 3sasaki; "" = one structure on S³,
                           // three on S⁷
    int dim = 0;                  // Sasaki sphere dimension (3 or 7; 0 = both)
    std::string algebra;          // restrict the invariants suite, "" = all
    std::uint64_t seed = 42;
    int samples = 0;              // 0 = per-check defaults
    double fd_step = 5e-3;
    std::map<std::string, double> tol; // per-check tolerance overrides
    bool timings = false;         // attach wall_time_ms to every check
};

struct CheckReport {
    std::string name;
    std::string paper_ref;
    double value = 0;
    std::optional<double> expected; // set for integer-valued checks
    double tolerance = 0;
    bool pass = false;
    std::optional<double> wall_time_ms;
};

// residual check: pass ⇔ value ≤ tolerance; integer check (expected set):
// pass ⇔ value == expected. Tolerance overrides from cfg.tol are applied by
// check name.
CheckReport make_check(const SuiteConfig& cfg, std::string name,
                       std::string paper_ref, double value, double tolerance,
                       std::optional<double> expected = std::nullopt);

const std::vector<std::string>& suite_names();

// run one suite (or "all"); throws std::invalid_argument for unknown names.
// Deterministic for a fixed config with timings off.
std::vector<CheckReport> run_suite(const SuiteConfig& cfg);

bool all_pass(const std::vector<CheckReport>& checks);

// checks are emitted sorted by name
std::string emit_json(const SuiteConfig& cfg,
                      std::vector<CheckReport> checks);
std::string emit_markdown(const SuiteConfig& cfg,
                          std::vector<CheckReport> checks);

} // namespace skt
