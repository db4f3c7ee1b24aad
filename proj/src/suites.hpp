// Internal: per-suite check builders used by run_suite, plus the shared
// emitter that applies tolerance overrides and optional timings.
// Part of skt. SPDX-License-Identifier: MIT

#pragma once

#include <skt/report.hpp>

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace skt::suites {

using Checks = std::vector<CheckReport>;

class Emitter {
public:
    explicit Emitter(const SuiteConfig& cfg)
        : cfg_(cfg), last_(std::chrono::steady_clock::now()) {}

    void residual(const std::string& name, const std::string& ref,
                  double value, double tol) {
        push(make_check(cfg_, name, ref, value, tol));
    }
    void integer(const std::string& name, const std::string& ref, long value,
                 long expected) {
        push(make_check(cfg_, name, ref, static_cast<double>(value), 0.0,
                        static_cast<double>(expected)));
    }
    // negative control: records 1 when the residual exceeds the threshold
    void control(const std::string& name, const std::string& ref,
                 double value, double threshold) {
        push(make_check(cfg_, name, ref, value > threshold ? 1.0 : 0.0, 0.0,
                        1.0));
    }

    Checks take() { return std::move(out_); }

private:
    void push(CheckReport c) {
        auto now = std::chrono::steady_clock::now();
        if (cfg_.timings)
            c.wall_time_ms =
                std::chrono::duration<double, std::milli>(now - last_)
                    .count();
        last_ = now;
        out_.push_back(std::move(c));
    }

    const SuiteConfig& cfg_;
    Checks out_;
    std::chrono::steady_clock::time_point last_;
};

Checks young(const SuiteConfig& cfg);
Checks products(const SuiteConfig& cfg);
Checks geometry(const SuiteConfig& cfg);
Checks cone(const SuiteConfig& cfg);
Checks prolongation(const SuiteConfig& cfg);
Checks dimensions(const SuiteConfig& cfg);
Checks sasaki(const SuiteConfig& cfg);
Checks gallot(const SuiteConfig& cfg);
Checks invariants(const SuiteConfig& cfg);

} // namespace skt::suites
