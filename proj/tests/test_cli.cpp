#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sugra/cli.hpp"
#include "sugra/errors.hpp"
#include "sugra/suites.hpp"

using namespace sugra;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("cmapcheck-test-" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("serial and parallel loops agree exactly") {
    for (const std::string name : {"cmap", "heisenberg", "twist"}) {
        suites::RunConfig c;
        c.n = 1;
        c.k = 1;
        c.points = 8;
        c.parallel = true;
        const suites::SuiteResult a = suites::run_suite(name, c);
        c.parallel = false;
        const suites::SuiteResult b = suites::run_suite(name, c);
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].per_point == b.checks[i].per_point);
        CHECK(a.constants == b.constants);
    }
}

TEST_CASE("suite names and validation") {
    const auto all = suites::expand_suites({"all"});
    CHECK(all == suites::suite_names());
    CHECK(suites::expand_suites({"cmap", "psk", "cmap"}) == std::vector<std::string>{"psk", "cmap"});
    CHECK_THROWS_AS(suites::expand_suites({"nope"}), ArgumentError);

    suites::RunConfig c;
    CHECK_NOTHROW(suites::validate(c));
    c.n = 4;
    CHECK_THROWS_AS(suites::validate(c), ArgumentError);
    c = {};
    c.points = 0;
    CHECK_THROWS_AS(suites::validate(c), ArgumentError);
    c = {};
    c.format = "xml";
    CHECK_THROWS_AS(suites::validate(c), ArgumentError);
    c = {};
    c.tol_fd = -1;
    CHECK_THROWS_AS(suites::validate(c), ArgumentError);
}

TEST_CASE("parse_k enforces integrality") {
    CHECK(cli::parse_k("0") == 0);
    CHECK(cli::parse_k(" 2 ") == 2);
    CHECK_THROWS_AS(cli::parse_k("0.5"), ArgumentError);
    CHECK_THROWS_AS(cli::parse_k("1/2"), ArgumentError);
    CHECK_THROWS_AS(cli::parse_k("-1"), ArgumentError);
    CHECK_THROWS_AS(cli::parse_k(""), ArgumentError);
    try {
        cli::parse_k("0.5");
    } catch (const ArgumentError& e) {
        CHECK(std::string(e.what()).find("integer") != std::string::npos);
    }
}

TEST_CASE("run: cmap report") {
    const Result r = invoke({"run", "--n", "1", "--k", "0", "--suites", "cmap", "--points", "20", "--seed", "7"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "cmapcheck-report");
    CHECK(j["passed"] == true);
    CHECK(j["config"]["seed"] == 7);
    const auto& checks = j["suites"]["cmap"]["checks"];
    double worst = 0;
    for (const auto& c : checks) {
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("statement"));
        CHECK(c["points"] == 20);
        const std::string key = c["key"];
        if (key.rfind("route-", 0) == 0) worst = std::max(worst, c["max_residual"].get<double>());
    }
    CHECK(worst < 1e-9);
    CHECK(j["suites"]["cmap"]["constants"].contains("twist-constant"));
    CHECK(j.contains("wall_seconds"));
}

TEST_CASE("run: every suite is reported, exit reflects the aggregate") {
    const Result r = invoke({"run", "--suites", "all", "--n", "1", "--k", "1", "--points", "2"});
    const auto j = nlohmann::json::parse(r.out);
    for (const std::string& s : suites::suite_names()) CHECK(j["suites"].contains(s));
    CHECK(r.code == (j["passed"].get<bool>() ? 0 : 1));
    // the stated Heisenberg sign does not hold, so the aggregate fails
    CHECK(r.code == 1);
    CHECK(r.err.find("FAIL heisenberg") != std::string::npos);

    const Result ok = invoke({"run", "--suites", "psk,vphs,rigid,twist,cmap,einstein,isometry", "--n", "1", "--k", "1",
                           "--points", "2"});
    CHECK(ok.code == 0);
}

TEST_CASE("run: invalid configuration exits with 2") {
    const Result half = invoke({"run", "--n", "0", "--k", "0.5"});
    CHECK(half.code == 2);
    CHECK(half.err.find("integral") != std::string::npos);
    CHECK(invoke({"run", "--n", "4"}).code == 2);
    CHECK(invoke({"run", "--suites", "bogus"}).code == 2);
    CHECK(invoke({"run", "--points", "abc"}).code == 2);
    CHECK(invoke({"run", "--format", "yaml"}).code == 2);
    CHECK(invoke({"run", "--unknown"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("reports are byte-identical for identical config and seed") {
    const std::vector<std::string> args{"run", "--n", "1", "--k", "1", "--suites", "cmap,heisenberg", "--points", "4",
                                        "--seed", "3", "--deterministic"};
    const Result a = invoke(args), b = invoke(args);
    CHECK(a.out == b.out);
    auto serial = args;
    serial.push_back("--serial");
    CHECK(invoke(serial).out == a.out);
    CHECK(nlohmann::json::parse(a.out).contains("wall_seconds") == false);

    auto other = args;
    other[10] = "4";
    CHECK(invoke(other).out != a.out);
}

TEST_CASE("csv output") {
    const Result r = invoke({"run", "--n", "0", "--k", "0", "--suites", "einstein", "--points", "3", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "suite,check,point,residual,tolerance,gating");
    int rows = 0;
    for (std::string line; std::getline(in, line);) rows += line.rfind("einstein,einstein-residual,", 0) == 0;
    CHECK(rows == 3);
}

TEST_CASE("config file and output directory") {
    const fs::path dir = scratch_dir("config");
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# small run\n"
             "n = 0\n"
             "k = 2\n"
             "suites = cmap, einstein\n"
             "points = 3\n"
             "tol_structural = 1e-9\n"
             "deterministic = true\n"
             "output = " << (dir / "report.json").string() << "\n";
    }
    // command-line flags win over the file
    Result r = invoke({"run", "--config", cfg.string(), "--points", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(j["config"]["k"] == 2);
    CHECK(j["config"]["points"] == 4);
    CHECK(j["suites"].size() == 2);
    CHECK(j.contains("wall_seconds") == false);

    {
        std::ofstream f(dir / "bad.cfg");
        f << "colour = blue\n";
    }
    CHECK(invoke({"run", "--config", (dir / "bad.cfg").string()}).code == 2);
    {
        std::ofstream f(dir / "half.cfg");
        f << "k = 0.5\n";
    }
    CHECK(invoke({"run", "--config", (dir / "half.cfg").string()}).code == 2);
    {
        std::ofstream f(dir / "broken.cfg");
        f << "just some words\n";
    }
    CHECK(invoke({"run", "--config", (dir / "broken.cfg").string()}).code == 2);
    CHECK(invoke({"run", "--config", (dir / "missing.cfg").string()}).code == 2);

    const fs::path out = scratch_dir("outdir");
    ::setenv("CMAPCHECK_OUTPUT_DIR", out.string().c_str(), 1);
    r = invoke({"run", "--n", "0", "--suites", "psk", "--points", "2", "--format", "csv"});
    ::unsetenv("CMAPCHECK_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(fs::exists(out / "cmapcheck-report.csv"));
}

TEST_CASE("eval-metric") {
    Result r = invoke({"eval-metric", "--n", "0", "--k", "0", "--route", "fs", "--point", "1,0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 4\n");
    CHECK(invoke({"eval-metric", "--n", "0", "--k", "0", "--route", "assembled", "--point", "1,0,0,0"}).out == r.out);
    CHECK(invoke({"eval-metric", "--n", "0", "--k", "0", "--route", "twist", "--point", "1,0,0,0"}).out == r.out);

    r = invoke({"eval-metric", "--n", "1", "--k", "1", "--route", "fs", "--point", "0.1,0.2,1.7,0.3,0.1,0.2,0.4,0.5"});
    CHECK(r.code == 0);
    int lines = 0;
    for (char ch : r.out) lines += ch == '\n';
    CHECK(lines == 8);

    CHECK(invoke({"eval-metric", "--n", "0", "--k", "1", "--route", "fs", "--point", "0.1,0,0,0"}).code == 2);
    CHECK(invoke({"eval-metric", "--n", "0", "--k", "0", "--point", "1,0,0"}).code == 2);
    CHECK(invoke({"eval-metric", "--n", "0", "--k", "0", "--route", "other", "--point", "1,0,0,0"}).code == 2);
    CHECK(invoke({"eval-metric", "--n", "0", "--k", "0.5", "--point", "1,0,0,0"}).code == 2);
}
