#include "stratpath/graph.hpp"

#include <algorithm>
#include <ostream>

#include "stratpath/error.hpp"

namespace stratpath {

namespace {

void check_shape(std::size_t K, std::size_t L) {
    if (L < 2) {
        throw Error(ErrorKind::InvalidSpec, "the layered graph needs at least 2 strata, got " + std::to_string(L));
    }
    if (K < 2 * L) {
        throw Error(ErrorKind::InfeasibleProblem, "not enough distinct values for " + std::to_string(L) +
                                                      " strata of at least 2 distinct values each (K = " +
                                                      std::to_string(K) + ")");
    }
}

}  // namespace

LayeredGraph::LayeredGraph(std::size_t K, std::size_t L, std::vector<std::vector<Arc>> layers)
    : K_(K), L_(L), layers_(std::move(layers)) {
    first_out_.resize(layers_.size());
    for (std::size_t h = 0; h < layers_.size(); ++h) {
        auto& idx = first_out_[h];
        idx.assign(K_ + 3, layers_[h].size());
        for (std::size_t a = layers_[h].size(); a-- > 0;) idx[layers_[h][a].from] = a;
        for (std::size_t v = K_ + 2; v-- > 0;) idx[v] = std::min(idx[v], idx[v + 1]);
    }
}

std::span<const Arc> LayeredGraph::out_arcs(std::size_t h, std::size_t node) const {
    const auto& arcs = layers_.at(h - 1);
    const auto& idx = first_out_.at(h - 1);
    if (node > K_ + 1) return {};
    const std::size_t b = idx[node];
    const std::size_t e = idx[node + 1];
    return std::span<const Arc>(arcs).subspan(b, e - b);
}

std::size_t LayeredGraph::arc_count() const noexcept {
    std::size_t total = 0;
    for (const auto& l : layers_) total += l.size();
    return total;
}

LayeredGraph build_layered_graph(std::size_t K, std::size_t L) {
    check_shape(K, L);
    std::vector<std::vector<Arc>> layers(L);
    for (std::size_t h = 1; h <= L; ++h) {
        // Every later stratum needs at least two distinct values, so the
        // arc must stop early enough to leave 2(L-h) of them.
        const std::size_t to_max = K + 1 - 2 * (L - h);
        const std::size_t from_min = h == 1 ? 1 : 2 * h - 1;
        const std::size_t from_max = h == 1 ? 1 : to_max - 2;
        auto& arcs = layers[h - 1];
        for (std::size_t i = from_min; i <= from_max; ++i) {
            const std::size_t to_min = h == L ? K + 1 : i + 2;
            for (std::size_t j = to_min; j <= to_max; ++j) {
                arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(h), 0.0});
            }
        }
    }
    return LayeredGraph(K, L, std::move(layers));
}

ArcCounts arc_counts(std::size_t K, std::size_t L) {
    check_shape(K, L);
    ArcCounts c;
    c.S = K - 2 * L + 1;
    c.first = c.S;
    c.last = c.S;
    c.intermediate = (c.S * c.S + c.S) / 2;
    c.total = 2 * c.S + (L - 2) * c.intermediate;
    return c;
}

LayeredGraph attach_costs(const LayeredGraph& g, const PrefixMoments& pm) {
    if (pm.K != g.K()) {
        throw Error(ErrorKind::InternalConsistency, "prefix moments built for K = " + std::to_string(pm.K) +
                                                        ", graph for K = " + std::to_string(g.K()));
    }
    LayeredGraph out = g;
    for (auto& layer : out.layers_) {
        for (auto& arc : layer) {
            const SegmentStats st = segment_stats(pm, arc.from, arc.to);
            if (st.n_pop < 2) {
                throw Error(ErrorKind::InternalConsistency, "arc covering two or more groups holds fewer than 2 units");
            }
            arc.cost = unit_cost(st);
        }
    }
    out.costed_ = true;
    return out;
}

boost::multiprecision::cpp_int count_paths(const LayeredGraph& g) {
    using boost::multiprecision::cpp_int;
    std::vector<cpp_int> ways(g.K() + 2, 0);
    ways[g.source()] = 1;
    for (std::size_t h = 1; h <= g.L(); ++h) {
        std::vector<cpp_int> next(g.K() + 2, 0);
        for (const Arc& a : g.layer(h)) next[a.to] += ways[a.from];
        ways = std::move(next);
    }
    return ways[g.sink()];
}

void dump_arcs(const LayeredGraph& g, std::ostream& out) {
    const auto old_precision = out.precision(17);
    for (std::size_t h = 1; h <= g.L(); ++h) {
        for (const Arc& a : g.layer(h)) out << a.layer << ' ' << a.from << ' ' << a.to << ' ' << a.cost << '\n';
    }
    out.precision(old_precision);
}

}  // namespace stratpath
