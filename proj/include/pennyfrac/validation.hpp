#pragma once

#include <string>
#include <vector>

namespace pennyfrac {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the full acceptance suite (kernel oracles, analytic fixed points,
// assembly oracle, Griffith convergence, regime reproduction, mass
// conservation, irreversibility, negligible-terms observation).
// `quick` shortens the simulation windows for smoke use.
std::vector<CriterionResult> run_acceptance_suite(bool quick = false);

// Pretty pass/fail lines; returns true when everything passed.
bool report(const std::vector<CriterionResult>& results);

} // namespace pennyfrac
