#pragma once

#include <stdexcept>
#include <string>

namespace drinfeld {

// Invalid algebraic operation (inversion of zero, zero rejected as input, ...).
class ArithmeticError : public std::domain_error {
public:
    explicit ArithmeticError(const std::string& what) : std::domain_error(what) {}
};

// A value is indistinguishable from zero at its tracked precision, or a
// computation cannot deliver the requested number of certified digits.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed (usually a sign that a lattice bound or the
// working precision is too small for the requested computation).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace drinfeld
