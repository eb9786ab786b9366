/**
 * @file pgl.cpp
 * @brief Command-line front end: runs named verification suites over seeded
 *        random samples, generates deterministic instance files, and emits
 *        machine-readable reports.
 *
 * Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
 * input error (unknown suite, malformed instance file, bad flag values).
 */
#include "pgl/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<int> parse_dims(const std::string& csv) {
    std::vector<int> dims;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("--dim expects comma-separated integers, got '" + csv +
                                        "'");
        }
        if (used != item.size() || v < 1)
            throw std::invalid_argument("--dim expects positive integers, got '" + item + "'");
        dims.push_back(v);
    }
    if (dims.empty()) throw std::invalid_argument("--dim expects at least one size");
    return dims;
}

pgl::Json load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("malformed instance file: cannot open '" + path + "'");
    try {
        return pgl::Json::parse(in);
    } catch (const pgl::Json::parse_error& e) {
        throw std::runtime_error(std::string("malformed instance file: ") + e.what());
    }
}

void emit(const std::string& text, const std::string& report_path) {
    std::cout << text;
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write report to '" + report_path + "'");
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "pgl — residual verification suites for linear Poisson spaces, the "
        "multiplicative structure on U(n), cotangent groupoids of matrix Lie "
        "groups, and matrix *-algebra groupoids"};

    std::string suite;
    int trials = 20;
    std::uint64_t seed = 2026;
    std::string dims_csv;
    double tol = pgl::kDefaultTol;
    std::string report_path;
    std::string format = "json";
    std::string instance_path;
    bool list_suites = false;
    bool mutate = false;

    app.add_option("--suite", suite, "Suite to run (see --list-suites), or 'all'");
    app.add_option("--trials", trials, "Seeded random trials per check family (default 20)");
    app.add_option("--seed", seed, "PRNG seed (default 2026)");
    app.add_option("--dim", dims_csv, "Comma-separated sizes, e.g. 2,3 (suite-specific default)");
    CLI::Option* tol_opt =
        app.add_option("--tol", tol, "Residual tolerance (default 1e-9, or env PGL_TOL)");
    app.add_option("--report", report_path, "Also write the report to this file");
    app.add_option("--format", format, "Report format: json or text (default json)")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--instance", instance_path, "JSON instance file feeding the suite");
    app.add_flag("--list-suites", list_suites, "List the available suites and exit");
    app.add_flag("--mutate", mutate, "Run the suite's documented corrupted variant");

    CLI::App* gen = app.add_subcommand("gen", "Generate a deterministic instance file");
    std::string kind;
    int gen_dim = 2;
    std::uint64_t gen_seed = 2026;
    std::string out_path;
    gen->add_option("--kind", kind,
                    "subspace | poisson-space | structure-constants | group-spec | "
                    "algebra-spec | operator-sample")
        ->required();
    gen->add_option("--dim", gen_dim, "Instance size (default 2)");
    gen->add_option("--seed", gen_seed, "PRNG seed (default 2026)");
    gen->add_option("--out", out_path, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const std::string text = pgl::gen_instance(kind, gen_dim, gen_seed).dump(2) + "\n";
            emit(text, out_path);
            return 0;
        }
        if (list_suites) {
            for (const std::string& name : pgl::suite_names()) std::cout << name << "\n";
            return 0;
        }
        if (suite.empty()) {
            std::cerr << "error: no suite selected; use --suite NAME or --list-suites\n";
            return 2;
        }

        pgl::SuiteConfig cfg;
        cfg.suite = suite;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.tol = tol;
        cfg.mutate = mutate;
        if (!dims_csv.empty()) cfg.dims = parse_dims(dims_csv);
        if (tol_opt->count() == 0) {
            if (const char* env = std::getenv("PGL_TOL")) {
                char* end = nullptr;
                const double v = std::strtod(env, &end);
                if (end == env || *end != '\0' || !(v > 0.0))
                    throw std::invalid_argument("PGL_TOL must be a positive number, got '" +
                                                std::string(env) + "'");
                cfg.tol = v;
            }
        }
        if (!instance_path.empty()) cfg.instance = load_instance(instance_path);

        const pgl::SuiteReport rep = pgl::run_suite(cfg);
        const std::string text = (format == "json")
                                     ? pgl::suite_report_to_json(rep).dump(2) + "\n"
                                     : pgl::suite_report_to_text(rep);
        emit(text, report_path);
        return rep.failures == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
