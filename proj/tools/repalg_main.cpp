#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "repalg/scenario.hpp"

using namespace repalg;

namespace {

int emit(const Report& report, const std::string& format) {
    if (format == "json")
        std::cout << report.json();
    else
        std::cout << report.text();
    if (report.any_input_error()) return 2;
    return report.all_ok() ? 0 : 1;
}

struct CommonOpts {
    std::string scenario_path;
    std::string format = "text";
    int degree_bound = 0;  // 0 keeps the scenario's own bound
    unsigned long long seed = 12345;
};

std::unique_ptr<Scenario> load_with_opts(const CommonOpts& opts) {
    auto sc = load_scenario(opts.scenario_path);
    if (opts.degree_bound > 0) {
        sc->degree_bound = opts.degree_bound;
        sc->ctx = std::make_unique<RepContext>(*sc->algebra, *sc->coalgebra,
                                               sc->ctx->variant(), sc->action.get(),
                                               sc->degree_bound);
    }
    return sc;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("scenario", opts.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--degree-bound", opts.degree_bound,
                    "override the scenario degree bound");
    cmd->add_option("--seed", opts.seed, "seed for random-sampling suites");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"repalg: representation-algebra bracket calculator and verifier"};
    app.require_subcommand(1);

    CommonOpts check_opts;
    std::string axiom;
    auto* check = app.add_subcommand("check", "run a single named axiom check");
    check->add_option("axiom", axiom, "axiom name (cyclic, ci23, gerstenhaber, ...)")
        ->required();
    add_common(check, check_opts);

    CommonOpts bracket_opts;
    std::string ba, balpha, bb, bbeta;
    auto* bracket = app.add_subcommand("bracket", "compute <a_alpha, b_beta>_v");
    add_common(bracket, bracket_opts);
    bracket->add_option("--a", ba, "first algebra element")->required();
    bracket->add_option("--alpha", balpha, "first coalgebra basis label")->required();
    bracket->add_option("--b", bb, "second algebra element")->required();
    bracket->add_option("--beta", bbeta, "second coalgebra basis label")->required();

    CommonOpts jacobi_opts;
    std::string ja, jalpha, jb, jbeta, jc, jgamma;
    auto* jacobi = app.add_subcommand(
        "jacobi", "compute {a_alpha, b_beta, c_gamma}_v and cross-check the oracle");
    add_common(jacobi, jacobi_opts);
    jacobi->add_option("--a", ja)->required();
    jacobi->add_option("--alpha", jalpha)->required();
    jacobi->add_option("--b", jb)->required();
    jacobi->add_option("--beta", jbeta)->required();
    jacobi->add_option("--c", jc)->required();
    jacobi->add_option("--gamma", jgamma)->required();

    CommonOpts suite_opts;
    std::string suite_name;
    auto* suite = app.add_subcommand("verify-suite", "run a named verification suite");
    suite->add_option("name", suite_name,
                      "suite name (jacobi-oracle, invariance, trace-compat, ...)")
        ->required();
    add_common(suite, suite_opts);

    CommonOpts report_opts;
    std::string filter;
    auto* report = app.add_subcommand("report", "run every task in the scenario");
    add_common(report, report_opts);
    report->add_option("--filter", filter, "only run tasks whose name contains this");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto sc = load_with_opts(check_opts);
            Scenario::Task task;
            task.kind = "check";
            task.name = axiom;
            Report r;
            r.scenario = sc->name;
            r.tasks.push_back(run_task(*sc, task, check_opts.seed));
            return emit(r, check_opts.format);
        }
        if (bracket->parsed()) {
            auto sc = load_with_opts(bracket_opts);
            Scenario::Task task;
            task.kind = "bracket";
            task.params = {{"a", ba}, {"alpha", balpha}, {"b", bb}, {"beta", bbeta}};
            Report r;
            r.scenario = sc->name;
            r.tasks.push_back(run_task(*sc, task, bracket_opts.seed));
            return emit(r, bracket_opts.format);
        }
        if (jacobi->parsed()) {
            auto sc = load_with_opts(jacobi_opts);
            Scenario::Task task;
            task.kind = "jacobi";
            task.params = {{"a", ja},       {"alpha", jalpha}, {"b", jb},
                           {"beta", jbeta}, {"c", jc},         {"gamma", jgamma}};
            Report r;
            r.scenario = sc->name;
            r.tasks.push_back(run_task(*sc, task, jacobi_opts.seed));
            return emit(r, jacobi_opts.format);
        }
        if (suite->parsed()) {
            auto sc = load_with_opts(suite_opts);
            Scenario::Task task;
            task.kind = "suite";
            task.name = suite_name;
            // Pick up suite parameters from a matching scenario task.
            for (const auto& t : sc->tasks)
                if (t.kind == "suite" && t.name == suite_name) task.params = t.params;
            Report r;
            r.scenario = sc->name;
            r.tasks.push_back(run_task(*sc, task, suite_opts.seed));
            return emit(r, suite_opts.format);
        }
        if (report->parsed()) {
            auto sc = load_with_opts(report_opts);
            return emit(run_scenario(*sc, filter, report_opts.seed),
                        report_opts.format);
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
