#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stratpath/moments.hpp"

namespace stratpath {

/// A candidate stratum: the arc (from, to) covers distinct-value groups
/// from..to-1 and may only be used as stratum `layer`.
struct Arc {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint32_t layer = 0;
    double cost = 0.0;
};

/// Layered DAG on nodes 1..K+1. Layer h holds the arcs usable as stratum
/// h, sorted by (from, to); every source-to-sink path that takes exactly
/// one arc per layer is a feasible stratification with at least two
/// distinct values per stratum, and every such stratification is one path.
class LayeredGraph {
public:
    LayeredGraph(std::size_t K, std::size_t L, std::vector<std::vector<Arc>> layers);

    std::size_t K() const noexcept { return K_; }
    std::size_t L() const noexcept { return L_; }
    std::size_t source() const noexcept { return 1; }
    std::size_t sink() const noexcept { return K_ + 1; }

    /// Arcs of layer h (1-based).
    std::span<const Arc> layer(std::size_t h) const { return layers_.at(h - 1); }
    /// Arcs of layer h leaving `node`, in increasing `to` order.
    std::span<const Arc> out_arcs(std::size_t h, std::size_t node) const;

    std::size_t arc_count() const noexcept;
    bool has_costs() const noexcept { return costed_; }

private:
    friend LayeredGraph attach_costs(const LayeredGraph& g, const PrefixMoments& pm);

    std::size_t K_;
    std::size_t L_;
    std::vector<std::vector<Arc>> layers_;
    // first_out_[h][v] is the index in layers_[h] of the first arc leaving node v
    std::vector<std::vector<std::size_t>> first_out_;
    bool costed_ = false;
};

/// Throws Error(InvalidSpec) for L < 2 and Error(InfeasibleProblem) when
/// K < 2L.
LayeredGraph build_layered_graph(std::size_t K, std::size_t L);

struct ArcCounts {
    std::uint64_t S = 0;
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    std::uint64_t intermediate = 0;
    std::uint64_t total = 0;
};

/// Closed-form arc counts per layer for build_layered_graph(K, L).
ArcCounts arc_counts(std::size_t K, std::size_t L);

/// Copy of `g` with every arc costed as unit_cost(segment_stats(pm, from, to)).
LayeredGraph attach_costs(const LayeredGraph& g, const PrefixMoments& pm);

/// Number of source-to-sink paths using one arc from each layer in order.
boost::multiprecision::cpp_int count_paths(const LayeredGraph& g);

/// One arc per line: "layer from to cost".
void dump_arcs(const LayeredGraph& g, std::ostream& out);

}  // namespace stratpath
