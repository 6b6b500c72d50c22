#include "hdr/hierarchy.hpp"

#include <algorithm>
#include <string>

#include "level_search.hpp"

namespace hdr {

// ---------------------------------------------------------------- ShortcutGraph

std::uint32_t ShortcutGraph::add(ShortcutEdge e) {
    std::uint32_t idx;
    if (!free_.empty()) {
        idx = free_.back();
        free_.pop_back();
        edges_[idx] = std::move(e);
        alive_[idx] = 1;
    } else {
        idx = static_cast<std::uint32_t>(edges_.size());
        edges_.push_back(std::move(e));
        alive_.push_back(1);
    }
    const ShortcutEdge& stored = edges_[idx];
    const std::size_t need = std::size_t{std::max(stored.a, stored.b)} + 1;
    if (incidence_.size() < need) incidence_.resize(need);
    incidence_[stored.a].push_back(idx);
    incidence_[stored.b].push_back(idx);
    ++live_;
    return idx;
}

void ShortcutGraph::remove(std::uint32_t index) {
    if (!alive(index)) throw HierarchyError("removing dead shortcut slot " + std::to_string(index));
    const ShortcutEdge& e = edges_[index];
    for (VertexId x : {e.a, e.b}) std::erase(incidence_[x], index);
    alive_[index] = 0;
    edges_[index].children.clear();
    free_.push_back(index);
    --live_;
}

std::span<const std::uint32_t> ShortcutGraph::incident(VertexId v) const {
    if (v >= incidence_.size()) return {};
    return incidence_[v];
}

std::vector<std::uint32_t> ShortcutGraph::live_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(live_);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        if (alive_[i]) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------- Level

std::vector<VertexId> Level::cover() const {
    std::vector<VertexId> out;
    out.reserve(cover_size);
    for (VertexId v = 0; v < in_cover.size(); ++v) {
        if (in_cover[v]) out.push_back(v);
    }
    return out;
}

Base Level::radius() const { return pow8(index); }

// ---------------------------------------------------------------- shared steps

namespace detail {

namespace {

// Adds the midpoint of the (uncovered) pair search.source() -> t.
void settle_pair(const LevelSearch& search, VertexId t, std::map<VertexId, Provenance>& c_prime) {
    const auto path = search.path_vertices(t);
    const bool covered = std::any_of(path.begin(), path.end(), [&](VertexId x) { return c_prime.contains(x); });
    if (covered) return;
    const Base total = search.dist(t).base;
    VertexId best = kNoVertex;
    Base best_gap = 0;
    for (VertexId x : path) {
        const Base twice = 2 * search.dist(x).base;
        const Base gap = twice > total ? twice - total : total - twice;
        if (best == kNoVertex || gap < best_gap || (gap == best_gap && x < best)) {
            best = x;
            best_gap = gap;
        }
    }
    const VertexId s = search.source();
    c_prime.emplace(best, Provenance{std::min(s, t), std::max(s, t)});
}

bool qualifies(const LevelSearch& search, VertexId t, int i) {
    const PerturbedWeight d = search.dist(t);
    return d.base >= 6 * pow8(i - 1) && d.base <= pow8(i) && search.maxedge(t).base <= pow8(i - 1);
}

void count_search(LevelBuildStats* stats, const LevelSearch& search) {
    if (!stats) return;
    ++stats->searches;
    stats->settled += search.settled().size();
}

}  // namespace

void extend_c_prime(const LevelView& view, int i, std::span<const VertexId> sources,
                    const std::function<bool(VertexId)>& accept_partner,
                    std::map<VertexId, Provenance>& c_prime, LevelSearch& search, LevelBuildStats* stats) {
    std::vector<VertexId> partners;
    for (VertexId s : sources) {
        search.run(view, s, pow8(i));
        count_search(stats, search);
        partners.clear();
        for (VertexId t : search.settled()) {
            if (t > s && qualifies(search, t, i) && accept_partner(t)) partners.push_back(t);
        }
        std::sort(partners.begin(), partners.end());
        for (VertexId t : partners) {
            if (stats) ++stats->pairs_considered;
            settle_pair(search, t, c_prime);
        }
    }
}

void collect_pairs(const LevelView& view, int i, std::span<const VertexId> sources, LevelSearch& search,
                   std::vector<std::pair<VertexId, VertexId>>& out, LevelBuildStats* stats) {
    for (VertexId s : sources) {
        search.run(view, s, pow8(i));
        count_search(stats, search);
        for (VertexId t : search.settled()) {
            if (t != s && qualifies(search, t, i)) out.emplace_back(std::min(s, t), std::max(s, t));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void close_pairs(const LevelView& view, int i, std::span<const std::pair<VertexId, VertexId>> pairs,
                 std::map<VertexId, Provenance>& c_prime, LevelSearch& search, LevelBuildStats* stats) {
    VertexId current = kNoVertex;
    for (const auto& [s, t] : pairs) {
        if (s != current) {
            search.run(view, s, pow8(i));
            count_search(stats, search);
            current = s;
        }
        if (stats) ++stats->pairs_considered;
        if (search.reached(t)) settle_pair(search, t, c_prime);
    }
}

void shortcuts_from(const LevelView& view, VertexId source, Base radius, std::span<const char> in_cover,
                    LevelSearch& search, std::vector<FoundShortcut>& out) {
    out.clear();
    search.run(view, source, radius, in_cover);
    for (VertexId t : search.settled()) {
        if (t == source || t >= in_cover.size() || !in_cover[t] || search.interior_hit(t)) continue;
        out.push_back({t, search.dist(t), search.maxedge(t), search.path_refs(t)});
    }
}

std::uint32_t insert_shortcut(ShortcutGraph& graph, VertexId source, FoundShortcut found) {
    ShortcutEdge e;
    e.weight = found.weight;
    e.maxedge_below = found.maxedge;
    e.children = std::move(found.children);
    if (source < found.other) {
        e.a = source;
        e.b = found.other;
    } else {
        e.a = found.other;
        e.b = source;
        std::reverse(e.children.begin(), e.children.end());
    }
    return graph.add(std::move(e));
}

}  // namespace detail

// ---------------------------------------------------------------- operations

std::vector<std::vector<EdgeId>> partition_edges(const Graph& g) {
    std::vector<std::vector<EdgeId>> out;
    for (EdgeId id : g.edge_ids()) {
        const auto lvl = static_cast<std::size_t>(edge_level(g.edge(id).weight.base));
        if (out.size() <= lvl) out.resize(lvl + 1);
        out[lvl].push_back(id);
    }
    return out;
}

std::map<VertexId, Provenance> build_c_prime(const Graph& g, int i, const Level* prior, LevelBuildStats* stats) {
    std::map<VertexId, Provenance> c_prime;
    if (i <= 0 || prior == nullptr) return c_prime;  // C'[-1] and G[-1] are empty
    if (prior->index != i - 1) throw HierarchyError("prior level index does not match");
    const detail::LevelView view(g, &prior->graph, i - 1, pow8(i - 1), pow8(i));
    detail::LevelSearch search(g.vertex_capacity());
    const auto sources = prior->cover();
    detail::extend_c_prime(view, i, sources, [](VertexId) { return true; }, c_prime, search, stats);
    return c_prime;
}

ShortcutGraph build_shortcut_graph(const Graph& g, std::span<const char> in_cover, Base radius,
                                   const ShortcutGraph* prior, int prior_level, LevelBuildStats* stats) {
    const Base low = prior != nullptr ? pow8(prior_level) : 0;
    const detail::LevelView view(g, prior, prior_level, low, radius);
    detail::LevelSearch search(g.vertex_capacity());
    ShortcutGraph out;
    std::vector<detail::FoundShortcut> found;
    for (VertexId s = 0; s < in_cover.size(); ++s) {
        if (!in_cover[s]) continue;
        if (!g.has_vertex(s)) throw HierarchyError("cover vertex " + std::to_string(s) + " is not in the graph");
        detail::shortcuts_from(view, s, radius, in_cover, search, found);
        if (stats) {
            ++stats->searches;
            stats->settled += search.settled().size();
        }
        for (auto& f : found) {
            if (f.other > s) detail::insert_shortcut(out, s, std::move(f));
        }
    }
    return out;
}

Level build_level(const Graph& g, int i, const Level* prior, LevelBuildStats* stats) {
    Level level;
    level.index = i;
    for (EdgeId id : g.edge_ids()) {
        if (edge_level(g.edge(id).weight.base) == i) level.long_edges.push_back(id);
    }
    level.c_prime = build_c_prime(g, i, prior, stats);
    level.in_cover.assign(g.vertex_capacity(), 0);
    for (VertexId v : g.vertices()) {
        if (g.max_incident_level(v) >= i || level.c_prime.contains(v)) {
            level.in_cover[v] = 1;
            ++level.cover_size;
        }
    }
    if (level.cover_size > 0) {
        level.graph = build_shortcut_graph(g, level.in_cover, pow8(i), prior ? &prior->graph : nullptr, i - 1, stats);
    }
    return level;
}

Hierarchy Hierarchy::build(Graph g, const BuildOptions& options) {
    if (!g.is_connected()) throw HierarchyError("graph must be connected");
    Hierarchy h;
    h.graph_ = std::move(g);
    for (int i = 0;; ++i) {
        if (i >= options.level_cap) {
            throw HierarchyError("level cap " + std::to_string(options.level_cap) + " exceeded");
        }
        LevelBuildStats stats;
        Level level = build_level(h.graph_, i, i > 0 ? &h.levels_.back() : nullptr, &stats);
        if (level.cover_size == 0) break;
        h.levels_.push_back(std::move(level));
        h.stats_.push_back(stats);
    }
    return h;
}

Hierarchy Hierarchy::assemble(Graph g, std::vector<Level> levels) {
    Hierarchy h;
    h.graph_ = std::move(g);
    h.levels_ = std::move(levels);
    return h;
}

std::size_t Hierarchy::structure_size() const {
    std::size_t total = 0;
    for (const Level& l : levels_) total += l.cover_size + l.graph.edge_count();
    return total;
}

const ShortcutEdge& Hierarchy::shortcut(EdgeRef ref) const {
    if (ref.is_original() || ref.level < 0 || ref.level >= top()) {
        throw HierarchyError("edge reference does not name a shortcut edge");
    }
    const ShortcutGraph& sg = levels_[static_cast<std::size_t>(ref.level)].graph;
    if (!sg.alive(ref.index)) throw HierarchyError("dangling shortcut reference");
    return sg.edge(ref.index);
}

}  // namespace hdr
