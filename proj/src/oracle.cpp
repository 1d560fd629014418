#include "stratpath/oracle.hpp"

#include <chrono>
#include <numeric>

#include "stratpath/error.hpp"

namespace stratpath {

SolutionCount count_solutions(std::size_t K, std::size_t L) {
    SolutionCount out;
    if (L < 1 || K < 2 * L) return out;
    // C(a, b) with a = K - L - 1, b = L - 1; every partial product is itself
    // a binomial coefficient, so each division is exact.
    const std::size_t b = L - 1;
    const std::size_t a = K - L - 1;
    boost::multiprecision::cpp_int m = 1;
    for (std::size_t t = 1; t <= b; ++t) {
        m *= a - b + t;
        m /= t;
    }
    out.m = m;
    out.feasible = true;
    return out;
}

CompositionEnumerator::CompositionEnumerator(std::size_t K, std::size_t L) : K_(K), L_(L) {
    if (L == 0 || K < 2 * L) {
        done_ = true;
        return;
    }
    z_.assign(L, 2);
    z_.back() = K - 2 * (L - 1);
}

void CompositionEnumerator::advance() {
    if (done_) return;
    // Rightmost part (excluding the last, which absorbs the remainder) that
    // can grow while every later part keeps at least 2.
    std::size_t tail = z_.back();
    for (std::size_t p = L_ - 1; p-- > 0;) {
        const std::size_t later = L_ - 1 - p;
        if (tail > 2 * later) {
            ++z_[p];
            for (std::size_t r = p + 1; r + 1 < L_; ++r) z_[r] = 2;
            const std::size_t head = std::accumulate(z_.begin(), z_.end() - 1, std::size_t{0});
            z_.back() = K_ - head;
            return;
        }
        tail += z_[p];
    }
    done_ = true;
}

std::vector<Composition> enumerate_compositions(std::size_t K, std::size_t L) {
    std::vector<Composition> out;
    for (CompositionEnumerator it(K, L); !it.done(); it.advance()) out.push_back(it.current());
    return out;
}

std::vector<std::size_t> composition_nodes(const Composition& z) {
    std::vector<std::size_t> nodes{1};
    for (auto part : z) nodes.push_back(nodes.back() + part);
    return nodes;
}

StratificationSolution brute_force_solve(const FrequencyTable& ft, const ProblemSpec& spec, std::size_t cap) {
    const auto start = std::chrono::steady_clock::now();
    spec.validate();
    if (spec.N != ft.N) {
        throw Error(ErrorKind::InvalidSpec, "problem population size differs from the data");
    }
    const std::size_t K = ft.K();
    const SolutionCount count = count_solutions(K, spec.L);
    if (!count.feasible) {
        throw Error(ErrorKind::InfeasibleProblem, "no composition of " + std::to_string(K) + " distinct values into " +
                                                      std::to_string(spec.L) + " strata of at least 2");
    }
    if (count.m > cap) {
        throw Error(ErrorKind::OracleTooLarge, "exhaustive check needs " + count.m.str() +
                                                   " evaluations, above the cap of " + std::to_string(cap));
    }

    const PrefixMoments pm = build_prefix_moments(ft);
    PathSolution best;
    bool have = false;
    for (CompositionEnumerator it(K, spec.L); !it.done(); it.advance()) {
        auto nodes = composition_nodes(it.current());
        const double cost = path_unit_cost(pm, nodes);
        if (!have || cost < best.total_unit_cost) {
            best.nodes = std::move(nodes);
            best.total_unit_cost = cost;
            have = true;
        }
    }

    StratificationSolution sol = path_to_solution(best, pm, ft, spec);
    sol.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
}

}  // namespace stratpath
