#pragma once

#include <stdexcept>
#include <string>

namespace notional {

// Malformed, inconsistent, or out-of-domain input. CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input on which the requested computation degenerates
// (rank deficiency, zero dispersion). CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace notional
