#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sugra::suites {

struct RunConfig {
    int n = 1;
    int k = 0;
    std::vector<std::string> suites{"all"};
    int points = 50;
    std::uint64_t seed = 1;
    double tol_structural = 1e-9;
    double tol_fd = 1e-6;
    std::string output;
    std::string format = "json";
    bool deterministic = false;  // leave wall times out of the report
    bool parallel = true;        // false runs the serial reference loop
};

const std::vector<std::string>& suite_names();  // without "all"
// Throws ArgumentError on an invalid field.
void validate(const RunConfig& c);
// "all" expanded, duplicates removed, canonical order.
std::vector<std::string> expand_suites(const std::vector<std::string>& requested);

struct Check {
    std::string key;
    std::string statement;
    double residual = 0;
    double tolerance = 0;
    bool gating = true;  // diagnostics are reported but do not decide pass/fail
    int points = 0;
    std::vector<double> per_point;
    bool passed() const;
};

struct SuiteResult {
    std::string name;
    int n = 0;
    int k = 0;
    std::vector<Check> checks;
    std::map<std::string, double> constants;
    double wall_seconds = 0;
    bool passed() const;
    const Check& check(const std::string& key) const;
};

struct Report {
    RunConfig config;
    std::vector<SuiteResult> suites;
    double wall_seconds = 0;
    bool passed() const;
};

// Evaluates f(0..count-1), in parallel when requested. Results are stored by index,
// so the serial and parallel loops return identical vectors.
std::vector<double> map_points(int count, const std::function<double(int)>& f, bool parallel);
std::vector<std::vector<double>> map_points_multi(int count, int width,
                                                  const std::function<std::vector<double>(int)>& f,
                                                  bool parallel);

SuiteResult run_suite(const std::string& name, const RunConfig& config);
Report run(const RunConfig& config);

std::string to_json(const Report& r);
std::string to_csv(const Report& r);

struct AdSoundness {
    double max_error = 0;  // |AD - FD| / max(1, max |block|), worst over functions and orders
    int functions = 0;
    std::vector<double> per_function;
};
// Random composite functions, AD derivatives against central differences of the
// next-lower AD order.
AdSoundness ad_soundness(int functions, std::uint64_t seed, bool parallel = true);

}  // namespace sugra::suites
