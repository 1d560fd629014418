#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stratpath/population.hpp"

namespace stratpath {

/// Cumulative group moments; index k holds the total over groups 1..k and
/// index 0 holds zeros, so any run of consecutive groups is summarised by
/// two lookups.
///
/// `cum_y` and `cum_y2` are the raw sums. Variances are taken from
/// `cum_dev`/`cum_dev2`, the same sums of `y - shift` with `shift` the
/// population mean; this keeps the subtraction in the variance formula
/// well conditioned for data far from zero. Extended precision is used
/// throughout because prefix differencing loses digits in proportion to
/// the ratio of the whole-population moment to the segment's moment.
struct PrefixMoments {
    std::vector<std::size_t> cum_count;
    std::vector<long double> cum_y;
    std::vector<long double> cum_y2;

    long double shift = 0;
    std::vector<long double> cum_dev;
    std::vector<long double> cum_dev2;

    // Counters used to recognise segments whose y values are all equal.
    std::vector<std::size_t> cum_nonconstant;  // groups with y_min != y_max
    std::vector<std::size_t> cum_steps;        // groups whose y range differs from the previous group's

    std::size_t K = 0;
    std::size_t N = 0;
};

PrefixMoments build_prefix_moments(const FrequencyTable& ft);

/// Population statistics of one candidate stratum. `s2` is empty when the
/// stratum holds a single unit.
struct SegmentStats {
    std::size_t n_pop = 0;
    std::optional<double> s2;
    double y_total = 0.0;
};

/// Statistics of the stratum covering groups i..j-1 (1-based, 1 <= i < j <= K+1).
/// A segment whose y values are all equal gets s2 == 0 exactly.
SegmentStats segment_stats(const PrefixMoments& pm, std::size_t i, std::size_t j);

/// N_h * S^2_h. The constant (N/n)(1 - n/N) is left out; it is positive
/// for 0 < n < N and does not move the argmin.
double unit_cost(const SegmentStats& stats);

struct ProblemSpec {
    std::size_t L = 1;
    std::size_t n = 1;
    std::size_t N = 1;
    bool fpc = true;

    /// Throws Error(InvalidSpec) unless L >= 1 and 1 <= n <= N.
    void validate() const;
};

/// Variance of the total estimator under proportional allocation, given
/// the per-stratum unit costs. With fpc off the (1 - n/N) factor is
/// dropped (sampling with replacement).
double total_variance_proportional(std::span<const double> costs, const ProblemSpec& spec);

struct StratumDesign {
    std::size_t n_pop = 0;
    double s2 = 0.0;
    double n_h = 0.0;
};

/// Direct evaluation of sum N_h^2 * (S^2_h / n_h) * (1 - n_h/N_h) for an
/// arbitrary (possibly fractional) allocation.
double variance_general(std::span<const StratumDesign> strata, const ProblemSpec& spec);

struct Allocation {
    std::vector<double> fractional;
    std::vector<std::int64_t> rounded;
};

/// n_h = n N_h / N, plus a largest-remainder rounding that sums to n.
/// Equal remainders go to the lower stratum index first.
Allocation allocate_proportional(std::span<const std::size_t> n_pops, const ProblemSpec& spec);

/// n_h = n N_h S_h / sum_l N_l S_l. Reporting only.
std::vector<double> allocate_neyman(std::span<const std::size_t> n_pops, std::span<const double> s_list,
                                    std::size_t n);

/// 100 * sqrt(variance) / total.
double coefficient_of_variation(double variance, double total);

}  // namespace stratpath
