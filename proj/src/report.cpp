// Part of skt. SPDX-License-Identifier: MIT
#include <skt/report.hpp>

#include "suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skt {

CheckReport make_check(const SuiteConfig& cfg, std::string name,
                       std::string paper_ref, double value, double tolerance,
                       std::optional<double> expected) {
    CheckReport c;
    c.name = std::move(name);
    c.paper_ref = std::move(paper_ref);
    c.value = value;
    c.expected = expected;
    auto it = cfg.tol.find(c.name);
    c.tolerance = it != cfg.tol.end() ? it->second : tolerance;
    c.pass = expected ? value == *expected : value <= c.tolerance;
    return c;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "young",      "products",   "geometry", "cone",   "prolongation",
        "dimensions", "sasaki",     "gallot",   "invariants", "all"};
    return names;
}

std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
    using Fn = suites::Checks (*)(const SuiteConfig&);
    static const std::vector<std::pair<std::string, Fn>> table = {
        {"young", suites::young},
        {"products", suites::products},
        {"geometry", suites::geometry},
        {"cone", suites::cone},
        {"prolongation", suites::prolongation},
        {"dimensions", suites::dimensions},
        {"sasaki", suites::sasaki},
        {"gallot", suites::gallot},
        {"invariants", suites::invariants}};

    if (cfg.suite == "all") {
        std::vector<CheckReport> out;
        for (const auto& [name, fn] : table) {
            std::vector<CheckReport> part = fn(cfg);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    for (const auto& [name, fn] : table)
        if (name == cfg.suite) return fn(cfg);
    throw std::invalid_argument("unknown suite: " + cfg.suite);
}

bool all_pass(const std::vector<CheckReport>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckReport& c) { return c.pass; });
}

namespace {

void sort_by_name(std::vector<CheckReport>& checks) {
    std::sort(checks.begin(), checks.end(),
              [](const CheckReport& a, const CheckReport& b) {
                  return a.name < b.name;
              });
}

} // namespace

std::string emit_json(const SuiteConfig& cfg,
                      std::vector<CheckReport> checks) {
    sort_by_name(checks);
    nlohmann::ordered_json doc;
    doc["suite"] = cfg.suite;
    doc["seed"] = cfg.seed;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const CheckReport& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["paper_ref"] = c.paper_ref;
        j["value"] = c.value;
        j["expected"] = c.expected ? nlohmann::ordered_json(*c.expected)
                                   : nlohmann::ordered_json(nullptr);
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (c.wall_time_ms) j["wall_time_ms"] = *c.wall_time_ms;
        doc["checks"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string num(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        std::ostringstream os;
        os << static_cast<long long>(v);
        return os.str();
    }
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

} // namespace

std::string emit_markdown(const SuiteConfig& cfg,
                          std::vector<CheckReport> checks) {
    sort_by_name(checks);
    std::ostringstream os;
    os << "# verify " << cfg.suite << " (seed " << cfg.seed << ")\n";
    std::string group;
    for (const CheckReport& c : checks) {
        std::string g = c.name.substr(0, c.name.find('.'));
        if (g != group) {
            group = g;
            os << "\n## " << group << "\n\n";
            os << "| check | value | expected | tolerance | pass |";
            if (cfg.timings) os << " ms |";
            os << "\n|---|---|---|---|---|";
            if (cfg.timings) os << "---|";
            os << "\n";
        }
        os << "| " << c.name << " | " << num(c.value) << " | "
           << (c.expected ? num(*c.expected) : std::string("-")) << " | "
           << num(c.tolerance) << " | " << (c.pass ? "yes" : "NO") << " |";
        if (cfg.timings)
            os << " " << num(c.wall_time_ms ? *c.wall_time_ms : 0.0) << " |";
        os << "\n";
    }
    return os.str();
}

} // namespace skt
