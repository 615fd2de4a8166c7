#pragma once
// Acceptance suites: each runs one numbered criterion end to end on the named
// built-in scenario at its stated tolerances and reports pass/fail with the
// measured values. `all` runs everything in order.

#include <string>
#include <vector>

namespace swlw {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

std::vector<std::string> verify_suites();

// throws std::invalid_argument listing the available suites on a bad name
std::vector<CriterionResult> run_verify_suite(const std::string& suite);

std::string verify_results_json(const std::vector<CriterionResult>& results);

} // namespace swlw
