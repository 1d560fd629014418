#include "stratpath/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "stratpath/compensated_sum.hpp"
#include "stratpath/error.hpp"

namespace stratpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unit cost of groups [first, last] straight from the group table:
// pooled within-group spread plus between-group spread about the segment
// mean. Shares nothing with the prefix arrays.
double two_pass_unit_cost(const FrequencyTable& ft, std::size_t first, std::size_t last) {
    std::size_t n = 0;
    CompensatedSum<double> sum;
    for (std::size_t k = first; k <= last; ++k) {
        n += ft.count[k - 1];
        sum += ft.y_sum[k - 1];
    }
    if (n < 2) return 0.0;
    const double mean = sum.value() / static_cast<double>(n);
    CompensatedSum<double> ss;
    for (std::size_t k = first; k <= last; ++k) {
        const auto c = static_cast<double>(ft.count[k - 1]);
        const double d = ft.y_sum[k - 1] / c - mean;
        ss += ft.y_m2[k - 1];
        ss += c * d * d;
    }
    return static_cast<double>(n) * ss.value() / static_cast<double>(n - 1);
}

}  // namespace

double path_unit_cost(const PrefixMoments& pm, const std::vector<std::size_t>& nodes) {
    double total = 0.0;
    for (std::size_t h = nodes.size() - 1; h-- > 0;) {
        total = unit_cost(segment_stats(pm, nodes[h], nodes[h + 1])) + total;
    }
    return total;
}

PathSolution solve(const LayeredGraph& g) {
    if (!g.has_costs()) {
        throw Error(ErrorKind::InternalConsistency, "solve() called on a graph without costs");
    }
    const std::size_t L = g.L();
    const std::size_t V = g.K() + 2;

    // to_go[h][v]: cheapest way to reach the sink from v using layers h..L.
    std::vector<std::vector<double>> to_go(L + 2, std::vector<double>(V, kInf));
    to_go[L + 1][g.sink()] = 0.0;
    for (std::size_t h = L; h >= 1; --h) {
        auto& cur = to_go[h];
        const auto& next = to_go[h + 1];
        for (const Arc& a : g.layer(h)) {
            if (next[a.to] == kInf) continue;
            const double cand = a.cost + next[a.to];
            if (cand < cur[a.from]) cur[a.from] = cand;
        }
    }
    if (to_go[1][g.source()] == kInf) {
        throw Error(ErrorKind::InternalConsistency, "no path with exactly " + std::to_string(L) + " arcs");
    }

    PathSolution p;
    p.total_unit_cost = to_go[1][g.source()];
    p.nodes.reserve(L + 1);
    p.nodes.push_back(g.source());
    std::size_t at = g.source();
    for (std::size_t h = 1; h <= L; ++h) {
        const double target = to_go[h][at];
        std::size_t chosen = 0;
        for (const Arc& a : g.out_arcs(h, at)) {
            if (to_go[h + 1][a.to] != kInf && a.cost + to_go[h + 1][a.to] == target) {
                chosen = a.to;
                break;
            }
        }
        if (chosen == 0) {
            throw Error(ErrorKind::InternalConsistency, "path reconstruction lost the optimal label");
        }
        p.nodes.push_back(chosen);
        at = chosen;
    }
    if (p.nodes.size() != L + 1 || p.nodes.back() != g.sink()) {
        throw Error(ErrorKind::InternalConsistency, "reconstructed path does not have exactly L arcs");
    }
    return p;
}

StratificationSolution path_to_solution(const PathSolution& p, const PrefixMoments& pm, const FrequencyTable& ft,
                                        const ProblemSpec& spec) {
    spec.validate();
    const std::size_t L = p.nodes.size() - 1;
    if (p.nodes.size() < 2 || p.nodes.front() != 1 || p.nodes.back() != pm.K + 1) {
        throw Error(ErrorKind::InternalConsistency, "path does not run from node 1 to node K+1");
    }

    StratificationSolution sol;
    sol.N = pm.N;
    sol.K = pm.K;
    sol.L = L;
    sol.n = spec.n;
    sol.fpc = spec.fpc;
    sol.nodes = p.nodes;
    sol.total_unit_cost = p.total_unit_cost;
    sol.y_total = static_cast<double>(pm.cum_y[pm.K]);

    std::vector<double> costs;
    std::vector<std::size_t> n_pops;
    for (std::size_t h = 0; h < L; ++h) {
        const std::size_t i = p.nodes[h];
        const std::size_t j = p.nodes[h + 1];
        if (j <= i) throw Error(ErrorKind::InternalConsistency, "path nodes are not increasing");
        const SegmentStats st = segment_stats(pm, i, j);

        StratumReport r;
        r.first_group = i;
        r.last_group = j - 1;
        r.lower_x = ft.q[i - 1];
        r.upper_x = ft.q[j - 2];
        r.n_pop = st.n_pop;
        r.s2 = st.s2;
        r.y_total = st.y_total;
        // A lone unit only occurs for a one-unit population, where n <= N
        // forces a census.
        r.unit_cost = st.s2 ? unit_cost(st) : 0.0;

        const double check = two_pass_unit_cost(ft, i, j - 1);
        const double scale = std::max(std::abs(check), std::abs(r.unit_cost));
        double floor = 0.0;
        for (std::size_t k = i; k < j; ++k) floor += ft.y_sumsq[k - 1];
        if (std::abs(check - r.unit_cost) > 1e-7 * scale + 1e-12 * floor) {
            throw Error(ErrorKind::InternalConsistency,
                        "stratum " + std::to_string(h + 1) + " cost mismatch: prefix " + std::to_string(r.unit_cost) +
                            " vs direct " + std::to_string(check));
        }

        costs.push_back(r.unit_cost);
        n_pops.push_back(r.n_pop);
        sol.strata.push_back(r);
        if (h + 1 < L) sol.boundaries.push_back(r.upper_x);
    }

    std::size_t covered = 0;
    for (auto np : n_pops) covered += np;
    if (covered != pm.N) {
        throw Error(ErrorKind::InternalConsistency, "strata cover " + std::to_string(covered) + " of " +
                                                        std::to_string(pm.N) + " units");
    }

    const Allocation alloc = allocate_proportional(n_pops, spec);
    for (std::size_t h = 0; h < L; ++h) {
        sol.strata[h].n_h_frac = alloc.fractional[h];
        sol.strata[h].n_h = alloc.rounded[h];
        if (alloc.rounded[h] == 0) {
            sol.warnings.push_back("stratum " + std::to_string(h + 1) + " receives no sample units after rounding");
        }
    }

    sol.variance = total_variance_proportional(costs, spec);
    if (sol.y_total != 0.0) sol.cv = coefficient_of_variation(sol.variance, sol.y_total);
    else sol.warnings.push_back("coefficient of variation undefined: the y total is zero");
    return sol;
}

StratificationSolution solve_problem(const FrequencyTable& ft, const ProblemSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    spec.validate();
    if (spec.N != ft.N) {
        throw Error(ErrorKind::InvalidSpec, "problem population size " + std::to_string(spec.N) +
                                                " differs from the data (" + std::to_string(ft.N) + ")");
    }
    const PrefixMoments pm = build_prefix_moments(ft);

    PathSolution path;
    if (spec.L == 1) {
        path.nodes = {1, ft.K() + 1};
        const SegmentStats st = segment_stats(pm, 1, ft.K() + 1);
        path.total_unit_cost = st.s2 ? unit_cost(st) : 0.0;
    } else {
        const LayeredGraph g = attach_costs(build_layered_graph(ft.K(), spec.L), pm);
        path = solve(g);
    }

    StratificationSolution sol = path_to_solution(path, pm, ft, spec);
    sol.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
}

}  // namespace stratpath
