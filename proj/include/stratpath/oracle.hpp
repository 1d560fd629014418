#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stratpath/moments.hpp"
#include "stratpath/population.hpp"
#include "stratpath/solver.hpp"

namespace stratpath {

/// Distinct-value counts per stratum, each at least 2, summing to K.
using Composition = std::vector<std::size_t>;

struct SolutionCount {
    boost::multiprecision::cpp_int m;
    bool feasible = false;
};

/// Number of ways to split K ordered distinct values into L runs of at
/// least two: C(K - L - 1, L - 1), exact. Zero and infeasible when K < 2L.
SolutionCount count_solutions(std::size_t K, std::size_t L);

/// Lexicographic enumeration of all compositions of K into L parts >= 2.
///
///     CompositionEnumerator it(8, 3);
///     for (; !it.done(); it.advance()) use(it.current());
class CompositionEnumerator {
public:
    CompositionEnumerator(std::size_t K, std::size_t L);

    bool done() const noexcept { return done_; }
    const Composition& current() const noexcept { return z_; }
    void advance();

private:
    std::size_t K_;
    std::size_t L_;
    Composition z_;
    bool done_ = false;
};

std::vector<Composition> enumerate_compositions(std::size_t K, std::size_t L);

/// Node sequence 1 = i_1 < ... < i_{L+1} = K+1 induced by a composition.
std::vector<std::size_t> composition_nodes(const Composition& z);

inline constexpr std::size_t kDefaultOracleCap = 10'000'000;

/// Evaluates every feasible composition and keeps the smallest unit-cost
/// total (same right-to-left fold as the path solver), breaking exact ties
/// by the earlier composition in lexicographic order.
///
/// Throws Error(OracleTooLarge) when the number of compositions exceeds
/// `cap`, and Error(InfeasibleProblem) when K < 2L.
StratificationSolution brute_force_solve(const FrequencyTable& ft, const ProblemSpec& spec,
                                         std::size_t cap = kDefaultOracleCap);

}  // namespace stratpath
