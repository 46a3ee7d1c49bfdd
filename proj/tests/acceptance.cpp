// Runs the acceptance criteria and prints one line per criterion.

#include <iomanip>
#include <iostream>

#include "ptentropy/selftest.hpp"

int main() {
    const auto results = pt::selftest::run_acceptance({});
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.description << "  (" << std::fixed
                  << std::setprecision(2) << r.seconds << " s)\n"
                  << "     " << r.detail << '\n';
        all = all && r.passed;
    }
    std::cout << (all ? "all acceptance criteria passed" : "acceptance FAILED") << '\n';
    return all ? 0 : 1;
}
