#include "sugra/cli.hpp"

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sugra/cmap.hpp"
#include "sugra/errors.hpp"
#include "sugra/sampling.hpp"
#include "sugra/suites.hpp"

namespace sugra::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Applies config-file values to options that were not given on the command line.
void apply_config(CLI::App& app, const std::map<std::string, std::string>& cfg) {
    for (const auto& [key, value] : cfg) {
        std::string name = key;
        for (char& c : name)
            if (c == '_') c = '-';
        CLI::Option* opt = nullptr;
        try {
            opt = app.get_option("--" + name);
        } catch (const CLI::OptionNotFound&) {
            throw ArgumentError("unknown config key '" + key + "'");
        }
        if (opt->count() > 0) continue;
        if (opt->get_type_size() == 0) {
            // flags take true/false
            if (value != "true" && value != "false" && value != "1" && value != "0")
                throw ArgumentError("config key '" + key + "' expects true or false");
            if (value == "true" || value == "1") opt->add_result("true");
        } else {
            std::stringstream ss(value);
            std::string part;
            if (opt->get_items_expected_max() > 1) {
                while (std::getline(ss, part, ',')) opt->add_result(trim(part));
            } else {
                opt->add_result(value);
            }
        }
        try {
            opt->run_callback();
        } catch (const CLI::ParseError& e) {
            throw ArgumentError("config key '" + key + "': " + e.what());
        }
    }
}

std::filesystem::path output_path(const std::string& output, const std::string& format) {
    const char* dir = std::getenv("CMAPCHECK_OUTPUT_DIR");
    if (dir != nullptr && *dir != '\0') {
        const std::filesystem::path name =
            output.empty() ? std::filesystem::path("cmapcheck-report." + format) : std::filesystem::path(output).filename();
        return std::filesystem::path(dir) / name;
    }
    return output;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open output file " + path.string());
    f << text;
    if (!f) throw ArgumentError("cannot write output file " + path.string());
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& g) {
    std::ostringstream s;
    s << std::setprecision(15);
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) s << (j ? " " : "") << (g(i, j) == 0.0 ? 0.0 : g(i, j));
        s << '\n';
    }
    out << s.str();
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot read config file " + path);
    std::map<std::string, std::string> cfg;
    std::string line;
    int number = 0;
    while (std::getline(f, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ArgumentError(path + ":" + std::to_string(number) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ArgumentError(path + ":" + std::to_string(number) + ": empty key");
        cfg[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

int parse_k(const std::string& s) {
    const std::string t = trim(s);
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size())
        throw ArgumentError("k must be a non-negative integer: the twist requires integral k (got '" + s + "')");
    if (v < 0) throw ArgumentError("k must be a non-negative integer (got " + t + ")");
    if (v > 1000) throw ArgumentError("k is limited to 1000");
    return static_cast<int>(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical verification of the deformed c-map construction over CH^n"};
    app.require_subcommand(1);

    suites::RunConfig rc;
    std::string k_text = "0";
    std::string config_path;
    int threads = 0;
    bool serial = false;
    CLI::App* run_cmd = app.add_subcommand("run", "run verification suites and write a report");
    run_cmd->add_option("--n", rc.n, "complex dimension of the base, 0..3");
    run_cmd->add_option("--k", k_text, "deformation parameter, non-negative integer");
    run_cmd->add_option("--suites", rc.suites, "comma-separated: psk,vphs,rigid,twist,cmap,einstein,heisenberg,isometry,all")
        ->delimiter(',');
    run_cmd->add_option("--points", rc.points, "sample points per suite");
    run_cmd->add_option("--seed", rc.seed, "random seed");
    run_cmd->add_option("--tol-structural", rc.tol_structural, "tolerance of the generic structural checks");
    run_cmd->add_option("--tol-fd", rc.tol_fd, "tolerance of finite-difference comparisons");
    run_cmd->add_option("--output", rc.output, "report path (stdout when empty)");
    run_cmd->add_option("--format", rc.format, "json or csv");
    run_cmd->add_flag("--deterministic", rc.deterministic, "omit wall times so reports are byte-identical");
    run_cmd->add_flag("--serial", serial, "use the serial point loop");
    run_cmd->add_option("--threads", threads, "OpenMP threads (0 keeps the default)");
    run_cmd->add_option("--config", config_path, "key=value file; command-line flags take precedence");

    int en = 0;
    std::string ek_text = "0", route_text = "fs";
    std::vector<double> point;
    CLI::App* eval_cmd = app.add_subcommand("eval-metric", "print the metric at a chart point");
    eval_cmd->add_option("--n", en, "complex dimension of the base, 0..3");
    eval_cmd->add_option("--k", ek_text, "deformation parameter, non-negative integer");
    eval_cmd->add_option("--route", route_text, "fs, assembled or twist");
    eval_cmd->add_option("--point", point, "4n+4 comma-separated coordinates (X, r, w, t)")->delimiter(',')->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (eval_cmd->parsed()) {
        try {
            const int k = parse_k(ek_text);
            if (en < 0 || en > 3) throw ArgumentError("n must lie in 0..3");
            const cmap::Route route = cmap::parse_route(route_text);
            const cmap::CmapModel m(en, k);
            m.check_point(point);
            double c = 1.0;
            if (route == cmap::Route::twist) {
                auto rng = sampling::make_rng(1, "cmap-calibration");
                std::vector<geometry::Point> cal;
                for (int i = 0; i < 10; ++i) cal.push_back(sampling::cmap_point(en, k, rng));
                c = cmap::fit_twist_constant(m, cal);
            }
            print_matrix(out, m.metric(point, route, c));
            return 0;
        } catch (const ArgumentError& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        } catch (const DomainError& e) {
            err << "error: point outside the chart domain: " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return 1;
        }
    }

    try {
        if (!config_path.empty()) apply_config(*run_cmd, read_config_file(config_path));
        rc.k = parse_k(k_text);
        rc.parallel = !serial;
        suites::validate(rc);
        if (threads < 0) throw ArgumentError("threads must be non-negative");
        if (threads > 0) omp_set_num_threads(threads);
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    suites::Report report;
    try {
        report = suites::run(rc);
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: suite aborted: " << e.what() << '\n';
        return 1;
    }

    const std::string text = rc.format == "csv" ? suites::to_csv(report) : suites::to_json(report);
    const std::filesystem::path path = output_path(rc.output, rc.format);
    try {
        if (path.empty())
            out << text;
        else
            write_file(path, text);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    for (const suites::SuiteResult& s : report.suites) {
        err << (s.passed() ? "pass " : "FAIL ") << s.name;
        for (const suites::Check& c : s.checks)
            if (!c.passed()) err << "  [" << c.key << " " << c.residual << " > " << c.tolerance << "]";
        err << '\n';
    }
    return report.passed() ? 0 : 1;
}

}  // namespace sugra::cli
