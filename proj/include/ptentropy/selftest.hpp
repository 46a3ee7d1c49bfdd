#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ptentropy/entropy.hpp"
#include "ptentropy/numerics.hpp"

namespace pt::selftest {

struct CheckResult {
    std::string id;
    std::string description;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    entropy::Tolerances tol;
    /// Kernel sign used for every numerical Fourier transform in the checks.
    /// KernelSign::Positive injects a convention fault the suite must catch.
    numerics::KernelSign fourier_sign = numerics::KernelSign::Negative;
};

/// Acceptance criteria 1-9, in order.
std::vector<CheckResult> run_acceptance(const Options& options);

/// Module invariants and properties.
std::vector<CheckResult> run_invariants(const Options& options);

nlohmann::json to_json(const std::vector<CheckResult>& results);

}  // namespace pt::selftest
