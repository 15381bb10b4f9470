#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "repalg/bracket_engine.hpp"

namespace repalg {

// A task outcome as reported: the raw verdict plus the expectation from the
// scenario file (negative controls declare expect = "fail" or "error").
struct TaskResult {
    std::string name;
    std::string status;    // "pass" | "fail" | "error"
    std::string expected;  // same domain
    bool ok = false;       // status == expected
    std::string detail;    // witness, error message, or computed element
};

struct Report {
    std::string scenario;
    std::vector<TaskResult> tasks;

    bool all_ok() const;
    bool any_input_error() const;
    std::string text() const;
    std::string json() const;
};

// A fully loaded scenario: presentations, coalgebra, form, double bracket,
// optional enriched-group action, and the task list. All module-level
// construction validations run eagerly in load_scenario.
class Scenario {
public:
    std::string name;
    int degree_bound = 4;

    std::unique_ptr<AlgebraPresentation> algebra;
    std::unique_ptr<AlgebraPresentation> frobenius_algebra;  // basis algebra of M
    std::unique_ptr<Coalgebra> coalgebra;
    Mat form_matrix;
    std::unique_ptr<AlgebraPresentation> coalgebra_group;  // group of a group dual
    std::unique_ptr<GroupAction> action;
    std::unique_ptr<RepContext> ctx;
    std::unique_ptr<DoubleBracket> db;

    struct Task {
        std::string kind;  // "check" | "suite" | "bracket" | "jacobi"
        std::string name;  // axiom or suite name for check/suite
        std::string expect = "pass";
        std::map<std::string, std::string> params;
    };
    std::vector<Task> tasks;

    BilinearForm form() const { return BilinearForm{coalgebra.get(), form_matrix}; }
    BracketSetup setup(bool require_cyclic = true) const {
        return BracketSetup(*ctx, *db, form(), require_cyclic);
    }

    Scenario() = default;
    Scenario(const Scenario&) = delete;
    Scenario& operator=(const Scenario&) = delete;
};

// Parses and validates a scenario file. Throws input_error with a location
// note on parse or validation failure.
std::unique_ptr<Scenario> load_scenario(const std::string& path);
std::unique_ptr<Scenario> load_scenario_text(const std::string& text,
                                             const std::string& origin);

// Resolves a scenario path against the REPALG_CORPUS directory when the file
// does not exist as given.
std::string resolve_scenario_path(const std::string& path);

// Runs the scenario's tasks (optionally only those whose name contains
// `filter`) and returns the deterministic report.
Report run_scenario(const Scenario& sc, const std::string& filter,
                    unsigned long long seed);

// Runs one ad-hoc task (used by the check/bracket/jacobi/verify-suite
// subcommands).
TaskResult run_task(const Scenario& sc, const Scenario::Task& task,
                    unsigned long long seed);

}  // namespace repalg
