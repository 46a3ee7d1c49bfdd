#pragma once

#include <stdexcept>
#include <string>

namespace pt {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature failed to meet its tolerance before the refinement cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_value, double last_error)
        : std::runtime_error(what), last_value_(last_value), last_error_(last_error) {}

    double last_value() const noexcept { return last_value_; }
    double last_error() const noexcept { return last_error_; }

private:
    double last_value_;
    double last_error_;
};

/// Bad command-line or configuration input.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace pt
