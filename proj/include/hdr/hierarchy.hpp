#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "hdr/graph.hpp"

namespace hdr {

class HierarchyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reference to an edge one level down: a shortcut edge of `level`, or an
/// original graph edge when `level == kOriginal`.
struct EdgeRef {
    static constexpr std::int32_t kOriginal = -1;
    std::int32_t level = kOriginal;
    std::uint32_t index = 0;

    bool is_original() const { return level == kOriginal; }
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

/// Edge of a shortcut graph G(C, r). Its underlying path is the concatenation
/// of `children`, listed in a -> b order.
struct ShortcutEdge {
    VertexId a = kNoVertex;  ///< smaller endpoint
    VertexId b = kNoVertex;  ///< larger endpoint
    PerturbedWeight weight;
    PerturbedWeight maxedge_below;  ///< heaviest original edge on the underlying path
    std::vector<EdgeRef> children;

    VertexId other(VertexId x) const { return x == a ? b : a; }
};

/// Slot table of shortcut edges with per-vertex incidence lists. Removed slots
/// are recycled, so indices of surviving edges stay stable across updates.
class ShortcutGraph {
public:
    std::uint32_t add(ShortcutEdge e);
    void remove(std::uint32_t index);

    bool alive(std::uint32_t index) const { return index < alive_.size() && alive_[index]; }
    const ShortcutEdge& edge(std::uint32_t index) const { return edges_.at(index); }
    std::span<const std::uint32_t> incident(VertexId v) const;
    std::size_t degree(VertexId v) const { return incident(v).size(); }

    std::size_t edge_count() const { return live_; }
    std::size_t slot_count() const { return edges_.size(); }
    /// Live slot indices, ascending.
    std::vector<std::uint32_t> live_indices() const;

private:
    std::vector<ShortcutEdge> edges_;
    std::vector<char> alive_;
    std::vector<std::uint32_t> free_;
    std::vector<std::vector<std::uint32_t>> incidence_;
    std::size_t live_ = 0;
};

/// The pair whose uncovered path caused a vertex to join C'[i].
struct Provenance {
    VertexId first = kNoVertex;
    VertexId second = kNoVertex;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One stratum of the hierarchy.
struct Level {
    int index = 0;
    std::map<VertexId, Provenance> c_prime;  ///< C'[i] with generating pairs
    std::vector<EdgeId> long_edges;          ///< E[i], ascending
    std::vector<char> in_cover;              ///< membership flags of C[i]
    std::size_t cover_size = 0;
    ShortcutGraph graph;                     ///< G[i] over C[i]

    bool covers(VertexId v) const { return v < in_cover.size() && in_cover[v]; }
    bool in_c_prime(VertexId v) const { return c_prime.contains(v); }
    std::vector<VertexId> cover() const;
    Base radius() const;
};

struct BuildOptions {
    int level_cap = 64;
};

struct LevelBuildStats {
    std::size_t searches = 0;
    std::size_t settled = 0;
    std::size_t pairs_considered = 0;
};

/// Levels C[i] / G[i] for i = 0 .. top-1 over an owned copy of the graph.
class Hierarchy {
public:
    Hierarchy() = default;

    static Hierarchy build(Graph g, const BuildOptions& options = {});
    /// Wraps already-built levels (deserialization). No validation is done.
    static Hierarchy assemble(Graph g, std::vector<Level> levels);

    const Graph& graph() const { return graph_; }
    /// Smallest i with C[i] empty.
    int top() const { return static_cast<int>(levels_.size()); }
    const std::vector<Level>& levels() const { return levels_; }
    const Level& level(int i) const { return levels_.at(static_cast<std::size_t>(i)); }
    const std::vector<LevelBuildStats>& build_stats() const { return stats_; }

    /// Sum over levels of |C[i]| + |edges of G[i]|.
    std::size_t structure_size() const;

    /// Raw access for the update and serialization code.
    Graph& mutable_graph() { return graph_; }
    std::vector<Level>& mutable_levels() { return levels_; }

    /// Shortcut edge referenced by `ref` (which must not be an original edge).
    const ShortcutEdge& shortcut(EdgeRef ref) const;

private:
    Graph graph_;
    std::vector<Level> levels_;
    std::vector<LevelBuildStats> stats_;
};

/// E[i] for every level that holds an edge; index = level.
std::vector<std::vector<EdgeId>> partition_edges(const Graph& g);

/// C'[i] built from the level below by the close-to-the-middle rule, visiting
/// candidate pairs in ascending (min id, max id) order. `prior` is null for i = 0.
std::map<VertexId, Provenance> build_c_prime(const Graph& g, int i, const Level* prior,
                                             LevelBuildStats* stats = nullptr);

/// Level i built from scratch on top of `prior` (null for i = 0). An empty
/// cover means the level does not exist and its graph is left empty.
Level build_level(const Graph& g, int i, const Level* prior, LevelBuildStats* stats = nullptr);

/// G(C, radius). With `prior` (the shortcut graph of level `prior_level`),
/// paths are found in prior ∪ {original edges with base in (8^prior_level, radius]};
/// without it, in the original edges of base <= radius. Throws if a member of C
/// is not a vertex.
ShortcutGraph build_shortcut_graph(const Graph& g, std::span<const char> in_cover, Base radius,
                                   const ShortcutGraph* prior = nullptr, int prior_level = -1,
                                   LevelBuildStats* stats = nullptr);

}  // namespace hdr
