#pragma once

#include <stdexcept>
#include <string>

namespace dpoly {

// Base for all library failures. Catch this to map to a process exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

// An iterative scheme exhausted its budget before reaching tolerance.
// last_value holds the best estimate at abort time.
struct NotConverged : Error {
    double last_value;
    long steps_completed;
    NotConverged(const std::string& what, double last, long steps)
        : Error(what), last_value(last), steps_completed(steps) {}
};

// A forward iterate left the representable float range. steps_completed
// tells the caller how far the trajectory got.
struct Overflow : Error {
    long steps_completed;
    Overflow(const std::string& what, long steps)
        : Error(what), steps_completed(steps) {}
};

// Requested (b, m) beyond the practical construction cap.
struct CapExceeded : Error {
    using Error::Error;
};

// A sampling or enumeration request exceeds the configured work budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// A polynomial failed a structural invariant (constant term, linear term,
// divisibility). Signals corruption or a genuine counterexample.
struct StructureError : Error {
    using Error::Error;
};

// A series whose convergence requires contraction factors < 1 hit a factor
// >= 1; the representation is invalid at this argument.
struct SeriesDiverged : Error {
    using Error::Error;
};

// Moment estimation asked for with fewer samples than the floor.
struct TooFewSamples : Error {
    using Error::Error;
};

// Invalid run configuration (unknown key, bad value, missing field).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace dpoly
