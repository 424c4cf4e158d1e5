#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffl {

// Caller passed something outside the contract (bad field string, non-monic
// argument, mixed field specs, ...).  Maps to CLI exit code 2.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mathematically undefined request (division by zero, u not P-integral).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// An internal exact identity failed; signals a bug upstream (e.g. a character
// evaluated wrongly makes a class number non-integral).  Maps to exit code 1.
struct integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation would exceed the configured cost cap.  Maps to exit code 3.
struct budget_error : std::runtime_error {
    budget_error(const std::string& what, uint64_t estimated, uint64_t cap)
        : std::runtime_error(what), estimated_cost(estimated), budget_cap(cap) {}
    uint64_t estimated_cost;
    uint64_t budget_cap;
};

// Cost cap for enumeration-heavy operations, counted in character/term
// evaluations.  Overridable via CLI flag or FFL_BUDGET.
struct Budget {
    uint64_t max_term_evals = 10'000'000;

    void charge(uint64_t cost, const char* what) const {
        if (cost > max_term_evals)
            throw budget_error(std::string(what) + ": estimated " +
                                   std::to_string(cost) + " term evaluations exceeds budget " +
                                   std::to_string(max_term_evals),
                               cost, max_term_evals);
    }
};

}  // namespace ffl
