#pragma once

#include <stdexcept>
#include <string>

namespace stratpath {

enum class ErrorKind {
    // input side: the data or its layout is unusable
    InputSchema,
    Data,
    EmptyPopulation,
    Io,
    // problem side: well-formed data, but no stratification exists
    InfeasibleProblem,
    InvalidSpec,
    // numeric signals raised by individual formulas
    UndefinedVariance,
    InfeasibleAllocation,
    DegenerateAllocation,
    UndefinedCv,
    OracleTooLarge,
    // a cross-check between two computations disagreed
    InternalConsistency,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit status used by the command-line tool for an error kind:
/// 2 for input problems, 3 for infeasible problems, 4 for everything that
/// indicates a bug or an unusable numeric result.
int exit_code(ErrorKind kind) noexcept;

}  // namespace stratpath
