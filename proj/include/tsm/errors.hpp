#pragma once

#include <stdexcept>
#include <string>

namespace tsm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operand dimensions or tensor-factor labels do not match.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A value violates a documented invariant (trace, positivity, parameter range).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A closed-form expression is evaluated at a vanishing denominator; callers
// should fall back to the numeric fixed-point path.
class SingularPointError : public Error {
public:
    using Error::Error;
};

}  // namespace tsm
