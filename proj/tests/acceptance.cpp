// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--seed S] [--expect-fail 3,...]
//
// Exit status is 0 when the set of failing criteria equals the --expect-fail set
// (empty by default). A criterion that is listed but passes also gives a non-zero
// exit, so the expectation cannot go stale silently.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sugra/suites.hpp"

using namespace sugra;

namespace {

struct Req {
    std::string suite;
    std::string key;
    double tol;
    int min_n = 0;
};

struct Worst {
    double residual = 0;
    double tol = 0;
    std::string where;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<std::pair<int, int>> grid;
    int points;
    std::vector<Req> reqs;
    // extra test on the suite result, returns an empty string when fine
    std::function<std::string(const suites::SuiteResult&)> extra;
    double time_limit = std::numeric_limits<double>::infinity();
};

std::vector<std::pair<int, int>> grid(std::vector<int> ns, std::vector<int> ks) {
    std::vector<std::pair<int, int>> g;
    for (int n : ns)
        for (int k : ks) g.emplace_back(n, k);
    return g;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

bool run_criterion(const Criterion& c, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Worst worst;
    double worst_ratio = -1;
    std::string problems;
    for (auto [n, k] : c.grid) {
        std::set<std::string> names;
        for (const Req& r : c.reqs) names.insert(r.suite);
        for (const std::string& name : names) {
            suites::RunConfig cfg;
            cfg.n = n;
            cfg.k = k;
            cfg.points = c.points;
            cfg.seed = seed;
            const suites::SuiteResult s = suites::run_suite(name, cfg);
            for (const Req& r : c.reqs) {
                if (r.suite != name || n < r.min_n) continue;
                const suites::Check* ch = nullptr;
                for (const auto& x : s.checks)
                    if (x.key == r.key) ch = &x;
                if (ch == nullptr) {
                    // some checks only exist for part of the grid (n > 0, n >= 2)
                    continue;
                }
                const double ratio = ch->residual / (r.tol > 0 ? r.tol : 1.0);
                const bool ok = ch->residual <= r.tol;
                if (!ok) {
                    problems += " " + r.key + "(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")=" +
                                fmt(ch->residual);
                }
                if (!(ratio <= worst_ratio)) {
                    worst_ratio = ratio;
                    worst = {ch->residual, r.tol, r.key + " n=" + std::to_string(n) + " k=" + std::to_string(k)};
                }
            }
            if (c.extra) {
                const std::string e = c.extra(s);
                if (!e.empty()) problems += " " + e + "(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit) problems += " runtime " + fmt(secs) + "s over " + fmt(c.time_limit) + "s";
    const bool pass = problems.empty();
    std::printf("criterion %d %s  %s  worst %s = %s (tol %s)  %.1fs%s%s\n", c.id, pass ? "PASS" : "FAIL",
                c.title.c_str(), worst.where.c_str(), fmt(worst.residual).c_str(), fmt(worst.tol).c_str(), secs,
                pass ? "" : "  failing:", problems.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = 20260101;
    std::vector<int> expect_fail;
    app.add_option("--seed", seed);
    app.add_option("--expect-fail", expect_fail)->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const auto all = grid({0, 1, 2, 3}, {0, 1, 2});
    std::vector<Criterion> cs;

    cs.push_back({1, "triple-route metric agreement", grid({0, 1, 2}, {0, 1, 2}), 100,
                  {{"cmap", "route-explicit-vs-assembled", 1e-9},
                   {"cmap", "route-explicit-vs-twist", 1e-9},
                   {"cmap", "twist-constant", 1e-9}},
                  nullptr, 30.0});

    cs.push_back({2, "Einstein property", grid({0, 1, 2}, {0, 1, 2}), 20,
                  {{"einstein", "einstein-residual", 1e-7}, {"einstein", "einstein-constant", 1e-7}},
                  [](const suites::SuiteResult& s) -> std::string {
                      const double l = s.constants.at("lambda");
                      return l < 0 ? "" : "lambda=" + fmt(l) + " not negative";
                  },
                  600.0});

    cs.push_back({3, "Heisenberg algebra", grid({0, 1, 2}, {0, 1, 2}), 30,
                  {{"heisenberg", "heisenberg-bracket", 1e-9},
                   {"heisenberg", "heisenberg-fibre-bracket", 1e-9},
                   {"heisenberg", "heisenberg-killing", 1e-9}},
                  nullptr});

    cs.push_back({4, "VPHS suite", grid({0, 1, 2, 3}, {0}), 30,
                  {{"vphs", "parallel-frame", 1e-10},
                   {"vphs", "gauss-manin-curvature", 1e-8},
                   {"vphs", "polarization-parallel", 1e-10},
                   {"vphs", "griffiths-transversality", 1e-12},
                   {"vphs", "frame-pairings", 1e-12}},
                  nullptr});

    cs.push_back({5, "PSK suite", grid({0, 1, 2, 3}, {0}), 30,
                  {{"psk", "chern-connection-derivative", 1e-9},
                   {"psk", "levi-civita-difference", 1e-9},
                   {"psk", "csk-axioms", 1e-9},
                   {"psk", "projective-curvature-flatness", 1e-8, 2}},  // n = 1 is the calibration point
                  [](const suites::SuiteResult& s) -> std::string {
                      // curvature identity only gates for n = 2, 3
                      for (const auto& c : s.checks)
                          if (c.key == "projective-curvature-flatness" && s.n >= 2 && !c.gating)
                              return "projective-curvature-flatness not gating";
                      return "";
                  }});

    cs.push_back({6, "hyperkahler suite", all, 30,
                  {{"rigid", "quaternion-relations", 1e-13},
                   {"rigid", "hyperkahler-compatibility", 1e-11},
                   {"rigid", "kahler-forms-closed", 1e-8},
                   {"rigid", "first-kahler-form-split", 1e-11}},
                  nullptr});

    std::vector<Req> twist;
    for (int j = 1; j <= 8; ++j) twist.push_back({"twist", "contraction-" + std::to_string(j), 1e-12});
    twist.push_back({"twist", "symmetry-hamiltonian", 1e-10});
    cs.push_back({7, "twist correspondence", all, 30, twist, nullptr});

    cs.push_back({8, "isometry functoriality", grid({1}, {0, 1, 2}), 20,
                  {{"isometry", "lift-pullback", 1e-8},
                   {"isometry", "generator-hamiltonian", 1e-10},
                   {"isometry", "generator-function", 1e-10}},
                  nullptr});

    std::set<int> failed;
    for (const Criterion& c : cs)
        if (!run_criterion(c, seed)) failed.insert(c.id);

    {
        const auto t0 = std::chrono::steady_clock::now();
        const suites::AdSoundness ad = suites::ad_soundness(200, seed);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = ad.functions == 200 && ad.max_error < 1e-6;
        std::printf("criterion 9 %s  AD soundness  worst relative error over %d functions = %s (tol 1.00e-06)  %.1fs\n",
                    pass ? "PASS" : "FAIL", ad.functions, fmt(ad.max_error).c_str(), secs);
        if (!pass) failed.insert(9);
    }

    const std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::ostringstream summary;
    summary << "summary: " << (9 - failed.size()) << "/9 criteria pass";
    if (!failed.empty()) {
        summary << "; failing:";
        for (int id : failed) summary << ' ' << id;
    }
    if (!expected.empty()) {
        summary << "; expected failing:";
        for (int id : expected) summary << ' ' << id;
    }
    std::printf("%s\n", summary.str().c_str());
    return failed == expected ? 0 : 1;
}
