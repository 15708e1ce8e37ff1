#pragma once

#include <cstddef>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace cbvp {

/// Precondition or argument-domain violation.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed expression text. `offset` is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset),
          message_(message) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t offset_;
    std::string message_;
};

/// Division by zero, unbound variable or non-finite value during evaluation.
/// `node` is the printed form of the offending subexpression.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& node, const std::string& message)
        : std::runtime_error(message + " in '" + node + "'"), node_(node) {}

    const std::string& node() const noexcept { return node_; }

private:
    std::string node_;
};

/// Symbolic differentiation hit a node with no classical derivative (step).
class UnsupportedDerivative : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Picard iteration exhausted its budget.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& message, int iterations, double last_update)
        : std::runtime_error(message), iterations_(iterations), last_update_(last_update) {}

    int iterations() const noexcept { return iterations_; }
    double last_update() const noexcept { return last_update_; }

private:
    int iterations_;
    double last_update_;
};

/// Marching pivot |1 + s| fell below the floor at node (i, j).
class SingularMarch : public std::runtime_error {
public:
    SingularMarch(std::size_t i, std::size_t j, double x1, double x2, double pivot)
        : std::runtime_error("singular march at node (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") x = (" + std::to_string(x1) + ", " + std::to_string(x2) +
                             "), |1 + s| = " + sci(std::abs(pivot))),
          i_(i),
          j_(j),
          pivot_(pivot) {}

    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }
    double pivot() const noexcept { return pivot_; }

private:
    static std::string sci(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", v);
        return buf;
    }

    std::size_t i_;
    std::size_t j_;
    double pivot_;
};

/// A solve inside a convergence study failed; `size` is the grid size per axis.
class StudyFailure : public std::runtime_error {
public:
    StudyFailure(std::size_t size, const std::string& cause)
        : std::runtime_error("solve failed on the " + std::to_string(size) + "x" + std::to_string(size) +
                             " grid: " + cause),
          size_(size) {}

    std::size_t size() const noexcept { return size_; }

private:
    std::size_t size_;
};

}  // namespace cbvp
