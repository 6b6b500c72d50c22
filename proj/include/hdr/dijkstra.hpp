#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "hdr/graph.hpp"

namespace hdr {

struct TreeLabel {
    PerturbedWeight dist = PerturbedWeight::infinity();
    EdgeId parent_edge = kNoEdge;
    VertexId parent = kNoVertex;
};

/// Result of a (possibly multi-seed, possibly bounded) Dijkstra search.
class ShortestPathTree {
public:
    ShortestPathTree() = default;
    explicit ShortestPathTree(std::size_t capacity) : labels_(capacity) {}

    bool reached(VertexId v) const { return v < labels_.size() && !labels_[v].dist.is_infinite(); }
    const TreeLabel& label(VertexId v) const { return labels_.at(v); }
    PerturbedWeight dist(VertexId v) const { return reached(v) ? labels_[v].dist : PerturbedWeight::infinity(); }

    /// Vertices in the order they were settled.
    const std::vector<VertexId>& settled() const { return settled_; }

    /// Walks parent edges back from `target` to its seed.
    PathResult path_to(const Graph& g, VertexId target) const;

private:
    friend ShortestPathTree dijkstra_bounded(const Graph&, std::span<const std::pair<VertexId, PerturbedWeight>>,
                                             PerturbedWeight);
    std::vector<TreeLabel> labels_;
    std::vector<VertexId> settled_;
};

using Seed = std::pair<VertexId, PerturbedWeight>;

/// Exact single-source distances over the whole graph.
ShortestPathTree dijkstra_full(const Graph& g, VertexId source);

/// Multi-seed Dijkstra that never settles a vertex whose distance exceeds `radius`.
ShortestPathTree dijkstra_bounded(const Graph& g, std::span<const Seed> seeds, PerturbedWeight radius);

/// B(center, radius), sorted by vertex id.
std::vector<VertexId> ball(const Graph& g, VertexId center, PerturbedWeight radius);

/// The unique shortest path between two vertices.
PathResult shortest_path(const Graph& g, VertexId from, VertexId to);

/// Point-to-point Dijkstra that stops once `to` is settled; reports the work done.
struct PointToPoint {
    PerturbedWeight dist;
    std::size_t settled = 0;
};
PointToPoint dijkstra_point_to_point(const Graph& g, VertexId from, VertexId to);

struct UniquenessReport {
    std::size_t sources_checked = 0;
    std::vector<std::pair<VertexId, VertexId>> violations;
    bool ok() const { return violations.empty(); }
};

/// All-pairs check that every minimum-weight path is unique.
///
/// Runs two Dijkstra variants per source that break parent ties in opposite
/// directions; any disagreement between the two trees marks a tie.
UniquenessReport verify_unique_shortest_paths(const Graph& g);

}  // namespace hdr
