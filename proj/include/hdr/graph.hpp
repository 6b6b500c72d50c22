#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdr/weight.hpp"

namespace hdr {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Seed used for tiebreaks when none is given. Fixed so test vectors reproduce.
inline constexpr std::uint64_t kDefaultSeed = 0x48445231'5eed0001ULL;

/// Raised for malformed or unsupported graph input and rejected mutations.
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    EdgeId id = kNoEdge;
    VertexId u = kNoVertex;  ///< smaller endpoint
    VertexId v = kNoVertex;  ///< larger endpoint
    PerturbedWeight weight;

    VertexId other(VertexId x) const { return x == u ? v : u; }
};

struct Incidence {
    VertexId to;
    EdgeId edge;
};

/// A path in the original graph.
struct PathResult {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    PerturbedWeight total;
    PerturbedWeight maxedge;
};

/// Tiebreak for the unordered pair {a, b} under a seed.
std::uint64_t edge_tiebreak(VertexId a, VertexId b, std::uint64_t seed);

/// Weighted undirected graph with stable edge ids.
///
/// A vertex exists while it has at least one incident edge. Edge ids are never
/// reused, so deleted edges leave a tombstone in the edge table.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::uint64_t seed, Base scale = 1) : seed_(seed), scale_(scale) {}

    /// Adds an edge with the seeded tiebreak for its endpoint pair.
    EdgeId add_edge(VertexId a, VertexId b, Base base);
    /// Adds an edge with an explicit id and weight (deserialization, tests).
    void restore_edge(EdgeId id, VertexId a, VertexId b, PerturbedWeight weight);
    void remove_edge(EdgeId id);
    void set_base_weight(EdgeId id, Base base);

    bool has_vertex(VertexId v) const { return v < adjacency_.size() && !adjacency_[v].empty(); }
    bool has_edge(EdgeId id) const { return id < edges_.size() && alive_[id]; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }
    std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;

    std::span<const Incidence> neighbors(VertexId v) const;

    /// One past the largest vertex id ever seen; sizes dense per-vertex arrays.
    std::size_t vertex_capacity() const { return adjacency_.size(); }
    std::size_t edge_capacity() const { return edges_.size(); }
    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edge_count_; }

    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edge_ids() const;

    /// U: the maximum base weight over all edges.
    Base max_base_weight() const;
    /// Highest edge_level() among edges incident to v, or -1 for an absent vertex.
    int max_incident_level(VertexId v) const;

    bool is_connected() const;

    std::uint64_t seed() const { return seed_; }
    /// Factor by which raw input weights were multiplied to get base weights.
    Base scale() const { return scale_; }
    void set_scale(Base scale) { scale_ = scale; }

private:
    void attach(const Edge& e);
    static std::uint64_t pair_key(VertexId a, VertexId b);

    std::uint64_t seed_ = kDefaultSeed;
    Base scale_ = 1;
    std::vector<std::vector<Incidence>> adjacency_;
    std::vector<Edge> edges_;
    std::vector<char> alive_;
    std::unordered_map<std::uint64_t, EdgeId> pair_index_;
    std::size_t vertex_count_ = 0;
    std::size_t edge_count_ = 0;
};

}  // namespace hdr
