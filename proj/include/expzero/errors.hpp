#pragma once

#include <stdexcept>
#include <string>

namespace expzero {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Variable lists of two polynomials disagree, or an unknown variable was named.
struct VarMismatchError : Error {
    using Error::Error;
};

// Input violates a documented precondition (bad exponent range, zero value for
// a unit variable, non-unit substitution image, malformed JSON, ...).
struct InputError : Error {
    using Error::Error;
};

// A numeric valuation is missing a symbol or fails its consistency check.
struct ValuationError : Error {
    using Error::Error;
};

}  // namespace expzero
