// Acceptance gate: runs every criterion at its pinned tolerance and prints one
// PASS/FAIL line per criterion. Exit code 0 only when all pass.

#include <iostream>

#include "mixpde/acceptance.hpp"

int main() {
    auto results = mixpde::acceptance::run_criteria(std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
