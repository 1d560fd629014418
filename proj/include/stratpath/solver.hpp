#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratpath/graph.hpp"
#include "stratpath/moments.hpp"
#include "stratpath/population.hpp"

namespace stratpath {

/// Source-to-sink path with exactly L arcs: nodes[0] = 1, nodes[L] = K+1.
struct PathSolution {
    std::vector<std::size_t> nodes;
    /// Sum of arc unit costs, accumulated right to left:
    /// c_1 + (c_2 + (... + c_L)).
    double total_unit_cost = 0.0;
};

/// Sum of unit costs along `nodes`, folded right to left. This is the
/// objective both the path solver and the exhaustive oracle compare, so
/// equal paths produce bitwise-equal totals.
double path_unit_cost(const PrefixMoments& pm, const std::vector<std::size_t>& nodes);

/// Minimum-cost path with exactly g.L() arcs. Cost-to-go labels are kept
/// per (layer, node); the path is then read off greedily from the source,
/// taking the smallest successor that attains the label, so among equal
/// minima the lexicographically smallest node sequence is returned.
PathSolution solve(const LayeredGraph& g);

struct StratumReport {
    std::size_t first_group = 0;  // 1-based, inclusive
    std::size_t last_group = 0;   // 1-based, inclusive
    double lower_x = 0.0;         // smallest x in the stratum
    double upper_x = 0.0;         // largest x in the stratum (the boundary b_h for h < L)
    std::size_t n_pop = 0;
    std::optional<double> s2;
    double y_total = 0.0;
    double unit_cost = 0.0;
    double n_h_frac = 0.0;
    std::int64_t n_h = 0;
};

struct StratificationSolution {
    std::size_t N = 0;
    std::size_t K = 0;
    std::size_t L = 0;
    std::size_t n = 0;
    bool fpc = true;

    std::vector<std::size_t> nodes;
    std::vector<double> boundaries;
    std::vector<StratumReport> strata;
    double total_unit_cost = 0.0;
    double y_total = 0.0;
    double variance = 0.0;
    std::optional<double> cv;  // empty when the y total is zero
    double elapsed_s = 0.0;
    std::vector<std::string> warnings;
};

/// Expands a path into strata, boundaries, allocations, variance and CV.
/// Each stratum's unit cost is recomputed two-pass from the group table
/// and compared with the prefix-moment value; a relative mismatch above
/// 1e-7 throws Error(InternalConsistency).
StratificationSolution path_to_solution(const PathSolution& p, const PrefixMoments& pm, const FrequencyTable& ft,
                                        const ProblemSpec& spec);

/// Full pipeline: prefix moments, layered graph, costs, path, report.
/// L = 1 skips the graph. Throws Error(InvalidSpec) for a bad spec and
/// Error(InfeasibleProblem) when K < 2L.
StratificationSolution solve_problem(const FrequencyTable& ft, const ProblemSpec& spec);

}  // namespace stratpath
