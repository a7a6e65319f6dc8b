#ifndef BOHRLAB_ERRORS_HPP
#define BOHRLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bohrlab {

// Thrown when an operation requires a nonempty set.
struct empty_set_error : std::runtime_error {
    explicit empty_set_error(const std::string& what) : std::runtime_error(what) {}
};

// Probe or index outside the carrier window.
struct bounds_error : std::runtime_error {
    explicit bounds_error(const std::string& what) : std::runtime_error(what) {}
};

// A scan exceeded its work budget.  Never a wrong answer: callers either
// enlarge the budget (BOHRLAB_BUDGET) or treat the computation as undecided.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact integer arithmetic failed (overflow, divisibility violation).
struct arithmetic_error : std::runtime_error {
    explicit arithmetic_error(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition does not hold for the given inputs.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Cyclic correlation data whose transform has a negative component.
struct not_positive_definite_error : std::runtime_error {
    explicit not_positive_definite_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad CLI / config input.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bohrlab

#endif
