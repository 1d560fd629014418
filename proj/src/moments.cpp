#include "stratpath/moments.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stratpath/compensated_sum.hpp"
#include "stratpath/error.hpp"

namespace stratpath {

PrefixMoments build_prefix_moments(const FrequencyTable& ft) {
    const std::size_t K = ft.K();
    PrefixMoments pm;
    pm.K = K;
    pm.N = ft.N;

    CompensatedSum<long double> total;
    for (double s : ft.y_sum) total += s;
    pm.shift = ft.N > 0 ? total.value() / static_cast<long double>(ft.N) : 0.0L;

    pm.cum_count.assign(K + 1, 0);
    pm.cum_y.assign(K + 1, 0.0L);
    pm.cum_y2.assign(K + 1, 0.0L);
    pm.cum_dev.assign(K + 1, 0.0L);
    pm.cum_dev2.assign(K + 1, 0.0L);
    pm.cum_nonconstant.assign(K + 1, 0);
    pm.cum_steps.assign(K + 1, 0);

    CompensatedSum<long double> y, y2, dev, dev2;
    for (std::size_t k = 0; k < K; ++k) {
        const auto c = static_cast<long double>(ft.count[k]);
        const long double mean_dev = static_cast<long double>(ft.y_sum[k]) / c - pm.shift;

        y += ft.y_sum[k];
        y2 += ft.y_sumsq[k];
        dev += c * mean_dev;
        // within-group spread plus the group's offset from the shift
        dev2 += static_cast<long double>(ft.y_m2[k]) + c * mean_dev * mean_dev;

        pm.cum_count[k + 1] = pm.cum_count[k] + ft.count[k];
        pm.cum_y[k + 1] = y.value();
        pm.cum_y2[k + 1] = y2.value();
        pm.cum_dev[k + 1] = dev.value();
        pm.cum_dev2[k + 1] = dev2.value();

        const bool nonconstant = ft.y_min[k] != ft.y_max[k];
        const bool step = k > 0 && (ft.y_min[k] != ft.y_min[k - 1] || ft.y_max[k] != ft.y_max[k - 1]);
        pm.cum_nonconstant[k + 1] = pm.cum_nonconstant[k] + (nonconstant ? 1 : 0);
        pm.cum_steps[k + 1] = pm.cum_steps[k] + (step ? 1 : 0);
    }
    return pm;
}

SegmentStats segment_stats(const PrefixMoments& pm, std::size_t i, std::size_t j) {
    if (i < 1 || j <= i || j > pm.K + 1) {
        throw Error(ErrorKind::InternalConsistency, "segment [" + std::to_string(i) + ", " +
                                                        std::to_string(j) + ") out of range");
    }
    SegmentStats st;
    st.n_pop = pm.cum_count[j - 1] - pm.cum_count[i - 1];
    st.y_total = static_cast<double>(pm.cum_y[j - 1] - pm.cum_y[i - 1]);
    if (st.n_pop < 2) return st;

    const bool constant = pm.cum_nonconstant[j - 1] == pm.cum_nonconstant[i - 1] &&
                          pm.cum_steps[j - 1] == pm.cum_steps[i];
    if (constant) {
        st.s2 = 0.0;
        return st;
    }

    const auto n = static_cast<long double>(st.n_pop);
    const long double s1 = pm.cum_dev[j - 1] - pm.cum_dev[i - 1];
    const long double s2 = pm.cum_dev2[j - 1] - pm.cum_dev2[i - 1];
    long double ss = s2 - s1 * s1 / n;
    if (ss < 0) {
        // Rounding noise is bounded by the segment's own second moment and
        // by the precision lost when differencing the population-wide prefix.
        const long double noise = 1e-9L * s2 + 1e3L * std::numeric_limits<long double>::epsilon() *
                                                   pm.cum_dev2[pm.K];
        if (ss < -noise) {
            throw Error(ErrorKind::InternalConsistency,
                        "negative stratum variance beyond rounding noise for segment [" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        ss = 0;
    }
    st.s2 = static_cast<double>(ss / (n - 1));
    return st;
}

double unit_cost(const SegmentStats& stats) {
    if (!stats.s2) {
        throw Error(ErrorKind::UndefinedVariance, "stratum variance undefined for a single unit");
    }
    return static_cast<double>(stats.n_pop) * *stats.s2;
}

void ProblemSpec::validate() const {
    if (L < 1) throw Error(ErrorKind::InvalidSpec, "number of strata must be at least 1");
    if (n < 1) throw Error(ErrorKind::InvalidSpec, "sample size must be at least 1");
    if (n > N) {
        throw Error(ErrorKind::InvalidSpec, "sample size " + std::to_string(n) + " exceeds population size " +
                                                std::to_string(N));
    }
}

namespace {

// (N/n)(1 - n/N) == (N - n)/n, evaluated with one rounding.
double proportional_factor(const ProblemSpec& spec) {
    const auto n = static_cast<double>(spec.n);
    if (spec.fpc) return static_cast<double>(spec.N - spec.n) / n;
    return static_cast<double>(spec.N) / n;
}

}  // namespace

double total_variance_proportional(std::span<const double> costs, const ProblemSpec& spec) {
    spec.validate();
    CompensatedSum<double> sum;
    for (double c : costs) sum += c;
    return proportional_factor(spec) * sum.value();
}

double variance_general(std::span<const StratumDesign> strata, const ProblemSpec& spec) {
    CompensatedSum<double> sum;
    for (const auto& s : strata) {
        if (!(s.n_h > 0.0)) {
            throw Error(ErrorKind::InfeasibleAllocation, "stratum allocated zero sample units");
        }
        const auto Nh = static_cast<double>(s.n_pop);
        double term = Nh * Nh * (s.s2 / s.n_h);
        if (spec.fpc) term *= 1.0 - s.n_h / Nh;
        sum += term;
    }
    return sum.value();
}

Allocation allocate_proportional(std::span<const std::size_t> n_pops, const ProblemSpec& spec) {
    const std::size_t total = std::accumulate(n_pops.begin(), n_pops.end(), std::size_t{0});
    if (total != spec.N) {
        throw Error(ErrorKind::InternalConsistency, "stratum sizes sum to " + std::to_string(total) +
                                                        ", expected " + std::to_string(spec.N));
    }
    const std::size_t H = n_pops.size();
    Allocation a;
    a.fractional.resize(H);
    a.rounded.resize(H);

    // Exact integer quotients and remainders of n*N_h / N, so that equal
    // remainders compare equal.
    std::vector<std::size_t> remainder(H);
    std::int64_t assigned = 0;
    for (std::size_t h = 0; h < H; ++h) {
        const boost::multiprecision::uint128_t prod = boost::multiprecision::uint128_t(spec.n) * n_pops[h];
        a.rounded[h] = static_cast<std::int64_t>(prod / spec.N);
        remainder[h] = static_cast<std::size_t>(prod % spec.N);
        a.fractional[h] = static_cast<double>(spec.n) * static_cast<double>(n_pops[h]) /
                          static_cast<double>(spec.N);
        assigned += a.rounded[h];
    }

    std::vector<std::size_t> order(H);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a_, std::size_t b_) { return remainder[a_] > remainder[b_]; });
    auto left = static_cast<std::int64_t>(spec.n) - assigned;
    for (std::size_t k = 0; left > 0 && k < H; ++k, --left) ++a.rounded[order[k]];
    return a;
}

std::vector<double> allocate_neyman(std::span<const std::size_t> n_pops, std::span<const double> s_list,
                                    std::size_t n) {
    if (n_pops.size() != s_list.size()) {
        throw Error(ErrorKind::InternalConsistency, "stratum size and deviation lists differ in length");
    }
    CompensatedSum<double> denom;
    for (std::size_t h = 0; h < n_pops.size(); ++h) denom += static_cast<double>(n_pops[h]) * s_list[h];
    if (!(denom.value() > 0.0)) {
        throw Error(ErrorKind::DegenerateAllocation, "Neyman allocation undefined: every stratum has zero spread");
    }
    std::vector<double> out(n_pops.size());
    for (std::size_t h = 0; h < n_pops.size(); ++h) {
        out[h] = static_cast<double>(n) * static_cast<double>(n_pops[h]) * s_list[h] / denom.value();
    }
    return out;
}

double coefficient_of_variation(double variance, double total) {
    if (total == 0.0) throw Error(ErrorKind::UndefinedCv, "coefficient of variation undefined for a zero total");
    return 100.0 * std::sqrt(std::max(variance, 0.0)) / total;
}

}  // namespace stratpath
