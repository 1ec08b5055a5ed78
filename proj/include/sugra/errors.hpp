#pragma once

#include <stdexcept>
#include <string>

namespace sugra {

// Bad shapes, indices, orders or malformed inputs.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Division by zero, log/sqrt of a non-positive value, singular matrices.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

// A point outside the region where a model is defined.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// An operation whose mathematical preconditions are not met at the given point.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace sugra
