#pragma once

// The acceptance suite: eleven criteria, each reporting a measured value
// against its target and tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace lambda2 {

struct AcceptanceOptions
{
    std::string filter;          // substring of the criterion name; empty runs all
    double eta_scale = 1.0;      // fault injection: eta = eta_scale * chi^2 / 4 in the adiabatic check
    std::uint64_t seed = 20240607;
    unsigned jobs = 0;
};

struct CriterionResult
{
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string target;
    std::string tolerance;
    std::vector<std::string> details;
    double seconds = 0.0;
};

struct AcceptanceSummary
{
    std::vector<CriterionResult> results;
    bool all_passed() const;
};

/// Criterion names in suite order, e.g. "c02-fig2-sweep".
std::vector<std::string> acceptance_criteria();

AcceptanceSummary run_acceptance(const AcceptanceOptions& options = {});

/// "[PASS] c06-twin  measured ... | target ... | tol ... (1.3 s)"
std::string format_result(const CriterionResult& r);

} // namespace lambda2
