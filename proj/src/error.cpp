#include "stratpath/error.hpp"

namespace stratpath {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InputSchema: return "input-schema";
        case ErrorKind::Data: return "data";
        case ErrorKind::EmptyPopulation: return "empty-population";
        case ErrorKind::Io: return "io";
        case ErrorKind::InfeasibleProblem: return "infeasible-problem";
        case ErrorKind::InvalidSpec: return "invalid-spec";
        case ErrorKind::UndefinedVariance: return "undefined-variance";
        case ErrorKind::InfeasibleAllocation: return "infeasible-allocation";
        case ErrorKind::DegenerateAllocation: return "degenerate-allocation";
        case ErrorKind::UndefinedCv: return "undefined-cv";
        case ErrorKind::OracleTooLarge: return "oracle-too-large";
        case ErrorKind::InternalConsistency: return "internal-consistency";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InputSchema:
        case ErrorKind::Data:
        case ErrorKind::EmptyPopulation:
        case ErrorKind::Io:
            return 2;
        case ErrorKind::InfeasibleProblem:
        case ErrorKind::InvalidSpec:
            return 3;
        default:
            return 4;
    }
}

}  // namespace stratpath
