#pragma once

#include <stdexcept>
#include <string>

namespace scrollar {

// Bad user input or an instance outside an operation's domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Refusal to start work whose size exceeds a configured cap.
class ResourceCap : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two computations of the same quantity disagreed, or an internal
// consistency check (sum rule, monotonicity) failed.
class Inconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace scrollar
