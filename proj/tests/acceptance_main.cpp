// Runs every acceptance criterion and prints one pass/fail line each.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "lambda2/acceptance.hpp"

int main(int argc, char** argv)
{
    lambda2::AcceptanceOptions opts;
    if (argc > 1)
        opts.filter = argv[1];
    const lambda2::AcceptanceSummary s = lambda2::run_acceptance(opts);
    int passed = 0;
    for (const auto& r : s.results) {
        std::printf("%s\n", lambda2::format_result(r).c_str());
        for (const auto& d : r.details)
            std::printf("         %s\n", d.c_str());
        passed += r.passed ? 1 : 0;
    }
    std::printf("%d/%zu criteria passed\n", passed, s.results.size());
    return !s.results.empty() && s.all_passed() ? EXIT_SUCCESS : EXIT_FAILURE;
}
