#pragma once

#include <stdexcept>
#include <string>

namespace lps {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- model / canonicalization --------------------------------------------

struct InconsistentBounds : Error {
    explicit InconsistentBounds(const std::string& what) : Error(what) {}
};

struct EmptyProblem : Error {
    explicit EmptyProblem(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

// -- MPS parsing -----------------------------------------------------------

struct UnknownSection : Error {
    explicit UnknownSection(const std::string& what) : Error(what) {}
};

struct UndeclaredRow : Error {
    explicit UndeclaredRow(const std::string& what) : Error(what) {}
};

struct DuplicateRow : Error {
    explicit DuplicateRow(const std::string& what) : Error(what) {}
};

struct MissingObjectiveRow : Error {
    explicit MissingObjectiveRow(const std::string& what) : Error(what) {}
};

struct MalformedNumber : Error {
    MalformedNumber(const std::string& token, int line)
        : Error("malformed number '" + token + "' at line " + std::to_string(line)),
          line_number(line) {}
    int line_number;
};

struct UnsupportedBoundKind : Error {
    explicit UnsupportedBoundKind(const std::string& what) : Error(what) {}
};

// -- solver / engine -------------------------------------------------------

struct PivotTooSmall : Error {
    explicit PivotTooSmall(const std::string& what) : Error(what) {}
};

struct BudgetTooSmall : Error {
    explicit BudgetTooSmall(const std::string& what) : Error(what) {}
};

struct DegenerateSpec : Error {
    explicit DegenerateSpec(const std::string& what) : Error(what) {}
};

// -- metrics ---------------------------------------------------------------

struct NonPositiveTime : Error {
    explicit NonPositiveTime(const std::string& what) : Error(what) {}
};

struct ZeroIterations : Error {
    explicit ZeroIterations(const std::string& what) : Error(what) {}
};

}  // namespace lps
