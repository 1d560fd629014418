#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stratpath/oracle.hpp"
#include "stratpath/solver.hpp"

namespace stratpath {

enum class OutputFormat { Text, Json };

struct RunConfig {
    std::string input_path;
    std::string x_col = "x";
    std::optional<std::string> y_col;
    std::size_t L = 1;
    std::size_t n = 1;
    bool fpc = true;
    bool oracle_check = false;
    std::size_t oracle_cap = kDefaultOracleCap;
    bool neyman = false;
    OutputFormat format = OutputFormat::Text;
    char delimiter = ',';
    std::optional<std::string> dump_arcs_path;
};

/// Extra facts about a run that are not part of the solution itself.
struct RunInfo {
    bool oracle_checked = false;
    std::optional<std::vector<double>> neyman;
};

/// Loads, solves, optionally cross-checks against the exhaustive oracle,
/// and writes the report to `out`. Diagnostics and warnings go to `err`.
/// Nothing is written to `out` unless the run succeeds.
///
/// Returns 0 on success, 2 for input errors, 3 for infeasible problems and
/// 4 for internal-consistency failures (including a solver/oracle
/// disagreement).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Re-solves by exhaustive enumeration and compares node sequences and
/// variances (1e-9 relative). Returns false without checking when the
/// number of compositions exceeds `cap` or no composition exists; throws
/// Error(InternalConsistency) on disagreement.
bool verify_with_oracle(const StratificationSolution& sol, const FrequencyTable& ft, const ProblemSpec& spec,
                        std::size_t cap);

std::string emit_json(const StratificationSolution& sol, const RunInfo& info);
std::string emit_text(const StratificationSolution& sol, const RunInfo& info);

}  // namespace stratpath
