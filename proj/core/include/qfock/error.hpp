#pragma once

#include <stdexcept>
#include <string>

namespace qfock {

/// Failure categories surfaced by the library. The names mirror the
/// diagnostics emitted on the CLI and in JSON reports.
enum class ErrorCode {
    NonDivisible,   // exact Laurent division has no exact quotient
    ZeroPoint,      // evaluation at q = 0
    IndexRange,     // generator or basis index out of range
    GradeUndefined, // graded bracket on a mixed-grade operand
    BadQ,           // numeric q0 in {0, 1, -1}
    RequiresNEqM,   // free Hamiltonian needs n = m
    Underdetermined, // root-vector solve has a nontrivial null space
    Inconsistent,    // root-vector solve has no solution
    MalformedRoot,  // root pair (i,j) without i < j
    Syntax,         // expression parse error
    Arity,          // wrong argument count in a bracket call
    UnresolvedAtom, // atom not available in the evaluation context
    Domain,         // other domain violation (negative power of a non-unit, ...)
    Usage,          // bad command-line invocation
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Syntax error with a 0-based character offset into the source text.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& expected, const std::string& found)
        : Error(ErrorCode::Syntax,
                "at offset " + std::to_string(position) + ": expected " + expected + ", found " + found),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace qfock
