#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hdr/hierarchy.hpp"

namespace hdr {

struct QueryStats {
    std::size_t settled = 0;
    int levels_searched = 0;
};

struct FunnelLabel {
    PerturbedWeight dist;
    VertexId parent = kNoVertex;
    EdgeRef via;
};

/// Bidirectional, level-by-level label propagation over the funnel graph.
///
/// Side 0 grows from the origin and side 1 from the destination. At level i a
/// side runs Dijkstra over G[i] seeded with its level-(i-1) labels on C[i],
/// settling vertices within base distance 8^(i+1).
struct FunnelSearchState {
    std::array<std::unordered_map<VertexId, FunnelLabel>, 2> labels;
    std::array<std::vector<VertexId>, 2> frontier;  ///< vertices settled at `level`
    int level = 0;
    std::optional<std::pair<VertexId, PerturbedWeight>> best_meet;
    QueryStats stats;
};

/// Radius used by a side's search at level i.
Base funnel_radius(int level);

FunnelSearchState funnel_search(const Hierarchy& h, VertexId origin, VertexId destination);

PerturbedWeight query_distance(const Hierarchy& h, VertexId origin, VertexId destination,
                               QueryStats* stats = nullptr);

/// Shortest path with every shortcut expanded to original edges.
PathResult query_path(const Hierarchy& h, VertexId origin, VertexId destination, QueryStats* stats = nullptr);

/// Original edge ids under shortcut `index` of `level`, in a -> b order.
std::vector<EdgeId> expand_edge(const Hierarchy& h, int level, std::uint32_t index);

/// Appends the original edges of `ref` traversed starting at `from`; returns
/// the vertex where the traversal ends.
VertexId append_expansion(const Hierarchy& h, EdgeRef ref, VertexId from, std::vector<EdgeId>& out);

/// Turns an edge sequence starting at `start` into a PathResult.
PathResult path_from_edges(const Graph& g, VertexId start, std::vector<EdgeId> edges);

}  // namespace hdr
