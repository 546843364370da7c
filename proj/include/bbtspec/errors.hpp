#pragma once

#include <stdexcept>
#include <string>

namespace bbt {

/// Malformed input: symbol files, CLI values, sweep specs.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation hit a degenerate configuration (vanishing leading
/// coefficient, point on a curve, singular quadrature node, ...).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method ran out of iterations.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bbt
