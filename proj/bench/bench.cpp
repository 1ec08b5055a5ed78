// Serial reference loop against the OpenMP loop on the heavier suites.
//
//   bench [--n N] [--k K] [--points P] [--repeat R]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sugra/suites.hpp"

using namespace sugra;

namespace {

double time_suite(const std::string& name, suites::RunConfig c, bool parallel, int repeat,
                  std::vector<double>* first) {
    c.parallel = parallel;
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const suites::SuiteResult r = suites::run_suite(name, c);
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        if (first && i == 0)
            for (const auto& ch : r.checks) first->insert(first->end(), ch.per_point.begin(), ch.per_point.end());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP timings"};
    suites::RunConfig c;
    c.n = 2;
    c.k = 1;
    c.points = 40;
    int repeat = 3;
    app.add_option("--n", c.n);
    app.add_option("--k", c.k);
    app.add_option("--points", c.points);
    app.add_option("--repeat", repeat);
    CLI11_PARSE(app, argc, argv);

    std::printf("threads %d, n %d, k %d, points %d, best of %d\n", omp_get_max_threads(), c.n, c.k, c.points, repeat);
    std::printf("%-12s %10s %10s %8s %s\n", "suite", "serial s", "omp s", "speedup", "identical");
    for (const std::string name : {"cmap", "einstein", "heisenberg", "twist", "rigid", "isometry"}) {
        std::vector<double> a, b;
        const double ts = time_suite(name, c, false, repeat, &a);
        const double tp = time_suite(name, c, true, repeat, &b);
        std::printf("%-12s %10.3f %10.3f %8.2f %s\n", name.c_str(), ts, tp, ts / tp, a == b ? "yes" : "NO");
    }

    const auto t0 = std::chrono::steady_clock::now();
    suites::ad_soundness(2000, 1, false);
    const double ad_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto t1 = std::chrono::steady_clock::now();
    suites::ad_soundness(2000, 1, true);
    const double ad_p = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    std::printf("%-12s %10.3f %10.3f %8.2f\n", "ad-2000", ad_s, ad_p, ad_s / ad_p);
    return 0;
}
