#pragma once

#include <stdexcept>
#include <string>

namespace oppe {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable in double precision.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An integral, series or tail failed to settle within its budget.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its budget without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unusable input data (empty sample, non-finite values, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace oppe
