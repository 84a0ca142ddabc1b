#pragma once

#include <stdexcept>
#include <string>

namespace nnv {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape or dimension mismatches, malformed arguments.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Operation not supported for the given set or problem class
// (unbounded polytopes, nonconvex constraints, scale limits, node budgets).
struct Unsupported : Error {
    explicit Unsupported(const std::string& msg) : Error(msg) {}
};

// Malformed network or problem files. Carries a line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, int line_no = -1)
        : Error(line_no >= 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
    int line;
};

}  // namespace nnv
