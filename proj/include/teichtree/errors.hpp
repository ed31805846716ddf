#pragma once

#include <stdexcept>
#include <string>

namespace teichtree {

// Input-side failure: malformed .ptree text, bad CLI usage. Maps to exit code 2.
struct ParseError : std::runtime_error {
    int line;  // 1-based line in the source text, 0 when not tied to a line
    explicit ParseError(const std::string& msg, int line_ = 0)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

// Computation-side failure. Maps to exit code 1.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A division that the construction guarantees to be exact had a remainder.
struct NonExactDivision : MathError {
    using MathError::MathError;
};

// A univariate polynomial with no real root was asked for its largest one.
struct NoRealRoot : MathError {
    using MathError::MathError;
};

// Exact integer arithmetic left the representable range.
struct OverflowError : MathError {
    using MathError::MathError;
};

}  // namespace teichtree
