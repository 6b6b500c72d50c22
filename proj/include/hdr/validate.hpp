#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdr/dijkstra.hpp"
#include "hdr/hierarchy.hpp"

namespace hdr {

/// Outcome of check_vertex_cover for one (C, r).
struct CoverReport {
    /// Pairs (s < t) with d > r and maxedge <= r whose path misses C.
    std::vector<std::pair<VertexId, VertexId>> uncovered;
    /// Sparsity constant k: max over v of |B(v, 2r) ∩ C|.
    std::size_t sparsity = 0;
    bool ok() const { return uncovered.empty(); }
};

/// Brute-force (r, k) vertex cover check over all vertex pairs.
CoverReport check_vertex_cover(const Graph& g, std::span<const char> in_cover, Base r);
CoverReport check_vertex_cover(const Graph& g, std::span<const VertexId> cover, Base r);

/// Single-source trees from every vertex. Dense, so small graphs only.
class AllPairs {
public:
    explicit AllPairs(const Graph& g);
    const ShortestPathTree& from(VertexId s) const { return trees_.at(s); }
    PerturbedWeight dist(VertexId s, VertexId t) const { return trees_.at(s).dist(t); }

private:
    std::vector<ShortestPathTree> trees_;
};

struct HierarchyReport {
    std::vector<std::string> failures;
    std::vector<std::size_t> sparsity;  ///< per level
    bool ok() const { return failures.empty(); }
    /// Largest per-level sparsity constant.
    std::size_t max_sparsity() const;
};

/// Cover condition at every level (and confirmation that no level at or above
/// top would need a cover), with per-level sparsity constants.
HierarchyReport check_hierarchy_covers(const Hierarchy& h, const AllPairs& oracle);

/// Every pair of C[i] whose shortest path has maxedge <= 8^i has the same
/// distance in G[i] as in G, and no G[i] distance undercuts G.
HierarchyReport check_shortcut_preservation(const Hierarchy& h, const AllPairs& oracle);

/// Per-edge structure checks: nesting, C[i] composition, E[i] membership,
/// child consistency, interior exclusion, exact weights. With
/// `strict_provenance`, every generating pair must also pass the admission
/// test in the current graph, which only fresh builds guarantee.
HierarchyReport check_structure(const Hierarchy& h, const AllPairs* oracle = nullptr, bool strict_provenance = true);

/// All of the above.
HierarchyReport validate_hierarchy(const Hierarchy& h, bool strict_provenance = true);

}  // namespace hdr
