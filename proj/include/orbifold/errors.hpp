#pragma once

#include <stdexcept>
#include <string>

namespace orbifold {

// Precondition violated (bad integers, Im t <= 0, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A strict comparison on theta could not be settled at the available precision.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input lies outside the range where the construction applies (beta^2 <= 1, ...).
struct ScopeError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace orbifold
