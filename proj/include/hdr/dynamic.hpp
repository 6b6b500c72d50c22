#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdr/hierarchy.hpp"

namespace hdr {

enum class UpdateKind { insert, remove, reweight };

/// One edge update. `weight` is a scaled base weight (insert and reweight).
struct UpdateRequest {
    UpdateKind kind = UpdateKind::insert;
    VertexId u = kNoVertex;
    VertexId v = kNoVertex;
    Base weight = 0;
};

/// A rejected update. The hierarchy and graph are left as they were.
class UpdateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Colors of the generating paths of C'[i] vertices. Black paths added no
/// vertex, so no C'[i] vertex carries that color.
enum class PathColor { red, black, blue };

struct Classification {
    std::vector<VertexId> region;  ///< R_i, sorted
    std::map<VertexId, PathColor> colors;
    std::vector<VertexId> c_init;  ///< C'[i] without its blue vertices, sorted
};

/// Classifies C'[i] against R_i = B(v1, 2*8^i) ∪ B(v2, 2*8^i) in the current
/// graph. Endpoints that are not vertices are skipped; at least one must exist.
Classification classify(const Hierarchy& h, int i, std::span<const VertexId> endpoints);

struct LevelUpdateStats {
    int level = 0;
    std::size_t region = 0;         ///< |R_i|
    std::size_t search_region = 0;  ///< vertices within 3*8^i of an endpoint afterwards
    std::size_t edge_region = 0;    ///< vertices within 5*8^i of an endpoint afterwards
    std::size_t blue = 0;
    std::size_t c_prime_added = 0;
    std::size_t c_prime_removed = 0;
    std::size_t edges_removed = 0;  ///< shortcut edges that disappeared or changed
    std::size_t edges_added = 0;
    std::size_t pairs_considered = 0;
    std::size_t settled = 0;
    /// C'[i] vertices added or removed plus vertices whose G[i] adjacency changed.
    std::size_t touched = 0;
    bool rebuilt = false;  ///< level built from scratch above the old top
};

struct UpdateStats {
    bool noop = false;
    int top_before = 0;
    int top_after = 0;
    std::vector<LevelUpdateStats> levels;
    std::size_t total_touched() const;
};

/// Applies one edge update in place, rebuilding each level only around the
/// update. Throws UpdateError for a disconnecting delete, an insert that is
/// not useful or would make another edge non-useful, an insert between two
/// new vertices and weights outside [1, 2^40].
UpdateStats apply_update(Hierarchy& h, const UpdateRequest& request);

struct VerifyReport {
    UpdateStats update;
    std::size_t pairs_checked = 0;
    std::size_t mismatches = 0;
    std::vector<std::size_t> sparsity;  ///< per level, when covers are checked
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Applies the update, then checks oracle distances on `pairs` and, when
/// `check_covers` is set, the per-level cover and structure invariants.
VerifyReport update_and_verify(Hierarchy& h, const UpdateRequest& request,
                               std::span<const std::pair<VertexId, VertexId>> pairs, bool check_covers = true);

}  // namespace hdr
