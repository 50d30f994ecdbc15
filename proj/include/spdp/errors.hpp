#pragma once

#include <stdexcept>
#include <string>

namespace spdp {

// Stable CLI exit codes. 0 is success, 1 is reserved for test harnesses.
enum class ExitCode : int {
    ok = 0,
    parse_error = 2,
    budget_exceeded = 3,
    property_violation = 4,
    internal_error = 5,
};

/// Malformed user input: polynomial text, JSON specs, DIMACS, circuit DSL,
/// or a local-width model that fails validation.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested construction exceeds the configured size budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural property that must hold was observed to fail.
/// Carries the counterexample description verbatim.
class PropertyViolation : public std::runtime_error {
public:
    explicit PropertyViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace spdp
