#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "turanlab/cli/commands.hpp"
#include "turanlab/cli/verify.hpp"

using namespace turanlab;
using namespace turanlab::cli;

namespace {

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

int emit_report(const RunReport& r, const GlobalOptions& g) {
    if (g.output == OutputFormat::json)
        print(report_json(r, g.timings));
    else
        std::cout << report_table(r, g.timings);
    return r.rejected.empty() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turan constants of finite abelian groups, Z^d and the real line"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOptions g;
    g.threads = default_threads();
    std::string output = "json";
    double tol = 0, time_limit = 0;
    std::uint64_t nodes = 0;
    app.add_option("--threads", g.threads, "worker threads (default: TURANLAB_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    auto* tol_opt = app.add_option("--tol", tol, "zero tolerance for spectra, relative to |H|")->check(CLI::NonNegativeNumber);
    auto* nodes_opt = app.add_option("--budget-nodes", nodes, "node limit for packing and spectrum searches")
                          ->check(CLI::PositiveNumber);
    auto* time_opt = app.add_option("--time-limit", time_limit, "wall-time limit per search, seconds")
                         ->check(CLI::NonNegativeNumber);
    app.add_option("--output", output, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--timings", g.timings, "include wall times (reports are then no longer byte-stable)");

    auto* turan = app.add_subcommand("turan", "bound the Turan constant of the problem in a spec file");
    std::string spec_path;
    turan->add_option("spec", spec_path, "problem spec (JSON)")->required();

    auto* verify = app.add_subcommand("verify-paper", "run the built-in worked-example checks");

    auto* search = app.add_subcommand("search", "search for a packing set or spectra and emit a certificate");
    std::string what;
    search->add_option("spec", spec_path, "problem spec (JSON)")->required();
    search->add_option("--what", what, "packing or spectrum")->required()->check(CLI::IsMember({"packing", "spectrum"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    g.output = output == "table" ? OutputFormat::table : OutputFormat::json;
    if (*tol_opt) g.tol = tol;
    if (*nodes_opt) g.budget_nodes = nodes;
    if (*time_opt) g.time_limit = time_limit;

    try {
        if (*turan) return emit_report(cmd_turan(load_spec(spec_path), g), g);
        if (*search) {
            const auto out = cmd_search(load_spec(spec_path), what == "packing" ? SearchTarget::packing : SearchTarget::spectrum, g);
            print(out.certificate);
            return out.found && !out.verified ? 2 : 0;
        }
        if (*verify) {
            VerifyOptions vo;
            vo.threads = g.threads;
            if (g.budget_nodes) vo.packing_budget.max_nodes = vo.spectrum_budget.max_nodes = *g.budget_nodes;
            if (g.time_limit) vo.packing_budget.time_limit = std::chrono::duration<double>(*g.time_limit);
            const auto results = run_verify_paper(vo);
            bool all = true;
            if (g.output == OutputFormat::json) {
                auto arr = json::array();
                for (const auto& r : results) {
                    json j{{"name", r.name}, {"expected", r.expected}, {"computed", r.computed}, {"pass", r.pass}};
                    if (g.timings) j["seconds"] = format_number(r.seconds);
                    arr.push_back(j);
                }
                print(json{{"tool", "turanlab"}, {"version", kVersion}, {"checks", arr}});
            }
            for (const auto& r : results) {
                all = all && r.pass;
                if (g.output == OutputFormat::table)
                    std::printf("%-24s %s  expected %s  computed %s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                                r.expected.c_str(), r.computed.c_str(),
                                g.timings ? ("  (" + format_number(r.seconds) + " s)").c_str() : "");
            }
            return all ? 0 : 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
