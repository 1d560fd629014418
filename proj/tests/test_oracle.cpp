#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "stratpath/error.hpp"
#include "stratpath/graph.hpp"
#include "stratpath/oracle.hpp"
#include "test_support.hpp"

namespace stratpath {
namespace {

using boost::multiprecision::cpp_int;

ProblemSpec spec_for(const FrequencyTable& ft, std::size_t L, std::size_t n) {
    ProblemSpec s;
    s.L = L;
    s.n = n;
    s.N = ft.N;
    return s;
}

// Independent count: compositions of K into L parts >= 2 by the recurrence
// c(k, l) = sum_{z >= 2} c(k - z, l - 1).
cpp_int composition_count(std::size_t K, std::size_t L) {
    std::vector<std::vector<cpp_int>> c(L + 1, std::vector<cpp_int>(K + 1, 0));
    c[0][0] = 1;
    for (std::size_t l = 1; l <= L; ++l) {
        for (std::size_t k = 0; k <= K; ++k) {
            for (std::size_t z = 2; z <= k; ++z) c[l][k] += c[l - 1][k - z];
        }
    }
    return c[L][K];
}

TEST(CountSolutions, PublishedValues) {
    EXPECT_EQ(count_solutions(100, 5).m, cpp_int(3049501));
    EXPECT_EQ(count_solutions(1000, 5).m, cpp_int("40430556376"));
    EXPECT_TRUE(count_solutions(1000, 5).feasible);
}

TEST(CountSolutions, EdgeCases) {
    for (std::size_t L = 1; L <= 12; ++L) EXPECT_EQ(count_solutions(2 * L, L).m, 1);
    const SolutionCount none = count_solutions(7, 4);
    EXPECT_FALSE(none.feasible);
    EXPECT_EQ(none.m, 0);
    EXPECT_EQ(count_solutions(1, 1).m, 0);
    EXPECT_EQ(count_solutions(9, 1).m, 1);
    // C(99989, 9), well past 64 bits
    EXPECT_EQ(count_solutions(100000, 10).m, cpp_int("2752013907406614758363940456528310240122"));
}

TEST(CountSolutions, MatchesRecurrence) {
    for (std::size_t L = 1; L <= 8; ++L) {
        for (std::size_t K = 0; K <= 40; ++K) {
            ASSERT_EQ(count_solutions(K, L).m, composition_count(K, L)) << "K=" << K << " L=" << L;
        }
    }
}

TEST(EnumerateCompositions, Examples) {
    using C = std::vector<Composition>;
    EXPECT_EQ(enumerate_compositions(8, 3), (C{{2, 2, 4}, {2, 3, 3}, {2, 4, 2}, {3, 2, 3}, {3, 3, 2}, {4, 2, 2}}));
    EXPECT_EQ(enumerate_compositions(5, 2), (C{{2, 3}, {3, 2}}));
    EXPECT_EQ(enumerate_compositions(4, 2), (C{{2, 2}}));
    EXPECT_EQ(enumerate_compositions(7, 1), (C{{7}}));
    EXPECT_TRUE(enumerate_compositions(5, 3).empty());
}

TEST(EnumerateCompositions, NodesOfComposition) {
    EXPECT_EQ(composition_nodes({3, 3, 2}), (std::vector<std::size_t>{1, 4, 7, 9}));
}

// Stream length, validity, strict lexicographic order, and agreement
// with the path count of the layered graph over the whole grid.
TEST(EnumerateCompositions, GridAgreesWithCountsAndPaths) {
    for (std::size_t L = 1; L <= 6; ++L) {
        for (std::size_t K = 2 * L; K <= 24; ++K) {
            std::size_t seen = 0;
            Composition prev;
            for (CompositionEnumerator it(K, L); !it.done(); it.advance()) {
                const Composition& z = it.current();
                ASSERT_EQ(z.size(), L);
                ASSERT_EQ(std::accumulate(z.begin(), z.end(), std::size_t{0}), K);
                ASSERT_TRUE(std::all_of(z.begin(), z.end(), [](std::size_t p) { return p >= 2; }));
                if (seen > 0) ASSERT_TRUE(std::lexicographical_compare(prev.begin(), prev.end(), z.begin(), z.end()));
                prev = z;
                ++seen;
            }
            ASSERT_EQ(cpp_int(seen), count_solutions(K, L).m) << "K=" << K << " L=" << L;
            if (L >= 2) ASSERT_EQ(count_paths(build_layered_graph(K, L)), count_solutions(K, L).m);
        }
    }
}

TEST(BruteForce, DeskExample) {
    const FrequencyTable ft = build_frequency_table(testing::population_from(testing::desk_x()));
    const StratificationSolution sol = brute_force_solve(ft, spec_for(ft, 2, 3));
    EXPECT_EQ(sol.nodes, (std::vector<std::size_t>{1, 3, 6}));
    EXPECT_EQ(sol.boundaries, (std::vector<double>{4}));
    EXPECT_NEAR(sol.variance, 112.0, 1e-9);
    EXPECT_NEAR(sol.total_unit_cost, 56.0, 1e-12);
}

TEST(BruteForce, ConstantYPicksFirstComposition) {
    const FrequencyTable ft = build_frequency_table(
        testing::population_from({1, 2, 3, 4, 5, 6, 7, 8, 9}, std::vector<double>(9, 0.1)));
    const StratificationSolution sol = brute_force_solve(ft, spec_for(ft, 3, 4));
    EXPECT_EQ(sol.nodes, (std::vector<std::size_t>{1, 3, 5, 10}));
    EXPECT_EQ(sol.variance, 0.0);
}

TEST(BruteForce, ForcedComposition) {
    const FrequencyTable ft = build_frequency_table(testing::population_from({3, 1, 4, 1, 5, 9, 2}));
    ASSERT_EQ(ft.K(), 6u);
    const StratificationSolution sol = brute_force_solve(ft, spec_for(ft, 3, 2));
    EXPECT_EQ(sol.nodes, (std::vector<std::size_t>{1, 3, 5, 7}));
}

TEST(BruteForce, CapAndFeasibility) {
    const FrequencyTable ft = build_frequency_table(testing::population_from({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}));
    try {
        brute_force_solve(ft, spec_for(ft, 3, 4), 5);  // 28 compositions
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OracleTooLarge);
        EXPECT_NE(std::string(e.what()).find("28"), std::string::npos);
    }
    EXPECT_NO_THROW(brute_force_solve(ft, spec_for(ft, 3, 4), 28));
    try {
        brute_force_solve(ft, spec_for(ft, 7, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InfeasibleProblem);
    }
}

// The oracle's argmin against a raw-data recursion that never touches
// prefix moments.
TEST(BruteForce, AgreesWithRawRecursion) {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t K = std::uniform_int_distribution<std::size_t>(4, 14)(rng);
        const std::size_t L = std::uniform_int_distribution<std::size_t>(2, K / 2)(rng);
        const Population pop = testing::random_population(rng, K);
        const FrequencyTable ft = build_frequency_table(pop);
        const StratificationSolution sol = brute_force_solve(ft, spec_for(ft, L, 1));
        const auto ref = testing::reference_optimum(pop, K, L);
        EXPECT_EQ(sol.nodes, ref.nodes);
        EXPECT_TRUE(testing::rel_close(sol.total_unit_cost, ref.unit_cost, 1e-9));
    }
}

}  // namespace
}  // namespace stratpath
