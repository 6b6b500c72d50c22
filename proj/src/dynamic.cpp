#include "hdr/dynamic.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <functional>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hdr/dijkstra.hpp"
#include "hdr/query.hpp"
#include "hdr/validate.hpp"
#include "level_search.hpp"

namespace hdr {

namespace {

using Entry = std::pair<PerturbedWeight, VertexId>;
using MinHeap = std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>>;

// Multi-source Dijkstra over original edges whose radius can be raised.
class GrowingBall {
public:
    GrowingBall(const Graph& g, std::span<const VertexId> centers) : g_(&g) {
        for (VertexId c : centers) {
            if (!g.has_vertex(c)) continue;
            best_[c] = PerturbedWeight::zero();
            heap_.push({PerturbedWeight::zero(), c});
        }
    }

    void grow(Base r) {
        while (!heap_.empty() && heap_.top().first.base <= r) {
            auto [d, x] = heap_.top();
            heap_.pop();
            if (done_.contains(x) || best_.at(x) != d) continue;
            done_.emplace(x, order_.size());
            order_.push_back(x);
            dist_.push_back(d.base);
            for (const Incidence& inc : g_->neighbors(x)) {
                if (done_.contains(inc.to)) continue;
                const PerturbedWeight nd = d + g_->edge(inc.edge).weight;
                auto it = best_.find(inc.to);
                if (it == best_.end() || nd < it->second) {
                    best_[inc.to] = nd;
                    heap_.push({nd, inc.to});
                }
            }
        }
    }

    bool within(VertexId v, Base r) const {
        auto it = done_.find(v);
        return it != done_.end() && dist_[it->second] <= r;
    }

    /// Settled vertices with distance <= r, nearest first. Call grow(r) first.
    std::span<const VertexId> members(Base r) const {
        const auto end = std::upper_bound(dist_.begin(), dist_.end(), r);
        return {order_.data(), static_cast<std::size_t>(end - dist_.begin())};
    }

private:
    const Graph* g_;
    std::unordered_map<VertexId, PerturbedWeight> best_;
    std::unordered_map<VertexId, std::size_t> done_;
    std::vector<VertexId> order_;
    std::vector<Base> dist_;
    MinHeap heap_;
};

// Point-to-set Dijkstra over original edges that can skip one edge.
class LocalSearch {
public:
    void run(const Graph& g, VertexId source, Base radius, EdgeId skip = kNoEdge) {
        dist_.clear();
        order_.clear();
        MinHeap heap;
        dist_[source] = PerturbedWeight::zero();
        heap.push({PerturbedWeight::zero(), source});
        std::unordered_set<VertexId> done;
        while (!heap.empty()) {
            auto [d, x] = heap.top();
            heap.pop();
            if (done.contains(x) || dist_.at(x) != d) continue;
            done.insert(x);
            order_.push_back(x);
            for (const Incidence& inc : g.neighbors(x)) {
                if (inc.edge == skip) continue;
                const PerturbedWeight nd = d + g.edge(inc.edge).weight;
                if (nd.base > radius) continue;
                auto it = dist_.find(inc.to);
                if (it == dist_.end() || nd < it->second) {
                    dist_[inc.to] = nd;
                    heap.push({nd, inc.to});
                }
            }
        }
        // Drop labels never settled: they lie beyond the radius.
        std::erase_if(dist_, [&](const auto& kv) { return !done.contains(kv.first); });
    }

    const std::vector<VertexId>& settled() const { return order_; }
    std::optional<PerturbedWeight> dist(VertexId v) const {
        auto it = dist_.find(v);
        if (it == dist_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::unordered_map<VertexId, PerturbedWeight> dist_;
    std::vector<VertexId> order_;
};

// Alternating BFS from both endpoints of a removed edge; true when they still meet.
bool still_connected(const Graph& g, VertexId a, VertexId b, EdgeId skip) {
    std::unordered_map<VertexId, int> side{{a, 0}, {b, 1}};
    std::array<std::vector<VertexId>, 2> frontier{std::vector<VertexId>{a}, std::vector<VertexId>{b}};
    while (!frontier[0].empty() && !frontier[1].empty()) {
        const int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<VertexId> next;
        for (VertexId x : frontier[static_cast<std::size_t>(s)]) {
            for (const Incidence& inc : g.neighbors(x)) {
                if (inc.edge == skip) continue;
                auto [it, fresh] = side.emplace(inc.to, s);
                if (!fresh) {
                    if (it->second != s) return true;
                    continue;
                }
                next.push_back(inc.to);
            }
        }
        frontier[static_cast<std::size_t>(s)] = std::move(next);
    }
    return false;
}

std::string pair_name(VertexId u, VertexId v) { return std::to_string(u) + "-" + std::to_string(v); }

// Rejects an update that would leave some edge other than `self` non-useful:
// edges (a,b) with d(a,u) + w + d(v,b) < w(a,b), distances in G without `self`.
void check_collateral(const Graph& g, VertexId u, VertexId v, PerturbedWeight w, EdgeId self) {
    const Base u_max = g.max_base_weight();
    if (w.base >= u_max) return;
    const Base reach = u_max - w.base;
    LocalSearch from_u, from_v;
    from_u.run(g, u, reach, self);
    from_v.run(g, v, reach, self);
    auto scan = [&](const LocalSearch& near, const LocalSearch& far) {
        for (VertexId a : near.settled()) {
            const PerturbedWeight da = *near.dist(a);
            for (const Incidence& inc : g.neighbors(a)) {
                if (inc.edge == self) continue;
                const auto db = far.dist(inc.to);
                if (db && da + w + *db < g.edge(inc.edge).weight) {
                    const Edge& e = g.edge(inc.edge);
                    throw UpdateError("update would make edge " + pair_name(e.u, e.v) + " non-useful");
                }
            }
        }
    };
    scan(from_u, from_v);
    scan(from_v, from_u);
}

void check_weight(Base w) {
    if (w < 1) throw UpdateError("edge weight must be at least 1 after scaling");
    if (w > kMaxBaseWeight) throw UpdateError("edge weight exceeds supported range");
}

// Blue test for one C'[i] vertex: its generating pair's current shortest path
// must exist within 8^i and stay inside the region.
bool is_blue(const Graph& g, int i, const Provenance& p, const GrowingBall& region, Base region_radius,
             detail::LevelSearch& search) {
    if (!g.has_vertex(p.first) || !g.has_vertex(p.second)) return false;
    if (!region.within(p.first, region_radius) || !region.within(p.second, region_radius)) return false;
    const detail::LevelView view(g, nullptr, -1, 0, pow8(i));
    search.run(view, p.first, pow8(i));
    if (!search.reached(p.second)) return false;
    const auto path = search.path_vertices(p.second);
    return std::all_of(path.begin(), path.end(), [&](VertexId x) { return region.within(x, region_radius); });
}

void sorted_insert(std::vector<EdgeId>& ids, EdgeId id) {
    ids.insert(std::lower_bound(ids.begin(), ids.end(), id), id);
}

void set_cover(Level& level, VertexId v, bool on) {
    if (level.in_cover.size() <= v) level.in_cover.resize(std::size_t{v} + 1, 0);
    if (static_cast<bool>(level.in_cover[v]) == on) return;
    level.in_cover[v] = on ? 1 : 0;
    if (on) {
        ++level.cover_size;
    } else {
        --level.cover_size;
    }
}

struct EdgeKey {
    PerturbedWeight weight;
    PerturbedWeight maxedge;
    std::vector<EdgeRef> children;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

}  // namespace

std::size_t UpdateStats::total_touched() const {
    std::size_t t = 0;
    for (const auto& l : levels) t += l.touched;
    return t;
}

Classification classify(const Hierarchy& h, int i, std::span<const VertexId> endpoints) {
    const Graph& g = h.graph();
    const bool any = std::any_of(endpoints.begin(), endpoints.end(), [&](VertexId v) { return g.has_vertex(v); });
    if (!any) throw UpdateError("no update endpoint is a vertex of the graph");
    Classification out;
    const Level& level = h.level(i);
    GrowingBall ball(g, endpoints);
    const Base r = sat_mul(pow8(i), 2);
    ball.grow(r);
    const auto members = ball.members(r);
    out.region.assign(members.begin(), members.end());
    std::sort(out.region.begin(), out.region.end());
    detail::LevelSearch search(g.vertex_capacity());
    for (const auto& [v, prov] : level.c_prime) {
        if (prov.first == kNoVertex) throw HierarchyError("missing provenance for vertex " + std::to_string(v));
        const bool blue = ball.within(v, r) && is_blue(g, i, prov, ball, r, search);
        out.colors[v] = blue ? PathColor::blue : PathColor::red;
        if (!blue) out.c_init.push_back(v);
    }
    return out;
}

UpdateStats apply_update(Hierarchy& h, const UpdateRequest& req) {
    Graph& g = h.mutable_graph();
    std::vector<Level>& levels = h.mutable_levels();
    UpdateStats stats;
    stats.top_before = h.top();
    const VertexId u = req.u;
    const VertexId v = req.v;
    if (u == v) throw UpdateError("self-loop at vertex " + std::to_string(u));
    const auto existing = g.find_edge(u, v);

    // ---- validation, all on the current graph
    EdgeId id = kNoEdge;
    int old_level = -1;
    switch (req.kind) {
        case UpdateKind::insert: {
            if (existing) throw UpdateError("edge " + pair_name(u, v) + " already exists");
            check_weight(req.weight);
            const bool hu = g.has_vertex(u), hv = g.has_vertex(v);
            if (!hu && !hv) throw UpdateError("inserted edge " + pair_name(u, v) + " has no endpoint in the graph");
            if (u == kNoVertex || v == kNoVertex) throw UpdateError("vertex id out of range");
            if (hu && hv) {
                const PerturbedWeight w{req.weight, edge_tiebreak(u, v, g.seed())};
                LocalSearch s;
                s.run(g, u, req.weight);
                const auto d = s.dist(v);
                if (d && *d < w) throw UpdateError("inserted edge " + pair_name(u, v) + " is not useful");
                check_collateral(g, u, v, w, kNoEdge);
            }
            break;
        }
        case UpdateKind::remove: {
            if (!existing) throw UpdateError("no edge " + pair_name(u, v));
            id = *existing;
            old_level = edge_level(g.edge(id).weight.base);
            const bool lone_u = g.neighbors(u).size() == 1, lone_v = g.neighbors(v).size() == 1;
            if (lone_u && lone_v) throw UpdateError("deleting " + pair_name(u, v) + " would empty the graph");
            if (!lone_u && !lone_v && !still_connected(g, u, v, id)) {
                throw UpdateError("deleting " + pair_name(u, v) + " would disconnect the graph");
            }
            break;
        }
        case UpdateKind::reweight: {
            if (!existing) throw UpdateError("no edge " + pair_name(u, v));
            check_weight(req.weight);
            id = *existing;
            const PerturbedWeight old_w = g.edge(id).weight;
            if (old_w.base == req.weight) {
                stats.noop = true;
                stats.top_after = stats.top_before;
                return stats;
            }
            old_level = edge_level(old_w.base);
            const PerturbedWeight w{req.weight, old_w.tiebreak};
            if (w > old_w) {
                LocalSearch s;
                s.run(g, u, req.weight, id);
                const auto d = s.dist(v);
                if (d && *d < w) throw UpdateError("reweighted edge " + pair_name(u, v) + " would not be useful");
            } else {
                check_collateral(g, u, v, w, id);
            }
            break;
        }
    }

    // ---- classification on the pre-update structure
    const std::vector<VertexId> ends{u, v};
    const int old_top = h.top();
    GrowingBall pre(g, ends);
    std::vector<std::vector<VertexId>> blue(static_cast<std::size_t>(old_top));
    std::vector<std::size_t> region_size(static_cast<std::size_t>(old_top), 0);
    {
        detail::LevelSearch search(g.vertex_capacity());
        for (int i = 1; i < old_top; ++i) {
            const Base r = sat_mul(pow8(i), 2);
            pre.grow(r);
            const auto members = pre.members(r);
            region_size[static_cast<std::size_t>(i)] = members.size();
            const Level& level = levels[static_cast<std::size_t>(i)];
            for (VertexId x : members) {
                auto it = level.c_prime.find(x);
                if (it != level.c_prime.end() && is_blue(g, i, it->second, pre, r, search)) {
                    blue[static_cast<std::size_t>(i)].push_back(x);
                }
            }
        }
    }
    std::vector<VertexId> vanished;  // endpoints that stop being vertices
    if (req.kind == UpdateKind::remove) {
        for (VertexId x : ends) {
            if (g.neighbors(x).size() == 1) vanished.push_back(x);
        }
    }

    // ---- mutate the graph
    int new_level = -1;
    switch (req.kind) {
        case UpdateKind::insert:
            id = g.add_edge(u, v, req.weight);
            new_level = edge_level(req.weight);
            break;
        case UpdateKind::remove:
            g.remove_edge(id);
            break;
        case UpdateKind::reweight:
            g.set_base_weight(id, req.weight);
            new_level = edge_level(req.weight);
            break;
    }
    const PerturbedWeight new_weight = new_level >= 0 ? g.edge(id).weight : PerturbedWeight{};

    GrowingBall post(g, ends);
    std::vector<VertexId> left_below;  // vertices that left C[i-1]
    auto fix_long_edges = [&](Level& level) {
        if (old_level == level.index) std::erase(level.long_edges, id);
        if (new_level == level.index) sorted_insert(level.long_edges, id);
    };

    // ---- level 0
    {
        Level& l0 = levels[0];
        LevelUpdateStats ls;
        ls.level = 0;
        fix_long_edges(l0);
        for (VertexId x : ends) {
            const bool was = l0.covers(x);
            set_cover(l0, x, g.has_vertex(x));
            if (was && !l0.covers(x)) left_below.push_back(x);
        }
        if (l0.in_cover.size() < g.vertex_capacity()) l0.in_cover.resize(g.vertex_capacity(), 0);
        if (old_level == 0) {
            const auto inc = l0.graph.incident(u);
            for (std::uint32_t idx : std::vector<std::uint32_t>(inc.begin(), inc.end())) {
                if (l0.graph.edge(idx).children.front().index == id) l0.graph.remove(idx);
            }
            ls.edges_removed = 1;
        }
        if (new_level == 0) {
            detail::insert_shortcut(l0.graph, u, {v, new_weight, new_weight, {EdgeRef{EdgeRef::kOriginal, id}}});
            ls.edges_added = 1;
        }
        ls.touched = ls.edges_removed + ls.edges_added > 0 ? 2 : 0;
        stats.levels.push_back(ls);
    }

    // ---- levels 1 .. old top - 1
    std::size_t i = 1;
    bool truncated = false;
    for (; i < levels.size(); ++i) {
        const int li = static_cast<int>(i);
        Level& level = levels[i];
        const Level& prior = levels[i - 1];
        LevelUpdateStats ls;
        ls.level = li;
        ls.region = i < region_size.size() ? region_size[i] : 0;
        ls.blue = i < blue.size() ? blue[i].size() : 0;
        fix_long_edges(level);
        LevelBuildStats work;

        // C'*[i]: C_init followed by the pairs near the update.
        std::map<VertexId, Provenance> next = level.c_prime;
        if (i < blue.size()) {
            for (VertexId x : blue[i]) next.erase(x);
        }
        for (VertexId x : left_below) next.erase(x);
        const Base search_r = sat_mul(pow8(li), 3);
        post.grow(search_r);
        std::vector<VertexId> sources;
        for (VertexId x : post.members(search_r)) {
            if (prior.covers(x)) sources.push_back(x);
        }
        ls.search_region = post.members(search_r).size();
        std::sort(sources.begin(), sources.end());
        const detail::LevelView view = detail::LevelView::step(g, levels, li);
        detail::LevelSearch search(g.vertex_capacity());
        std::vector<std::pair<VertexId, VertexId>> pairs;
        detail::collect_pairs(view, li, sources, search, pairs, &work);
        detail::close_pairs(view, li, pairs, next, search, &work);

        std::set<VertexId> candidates(ends.begin(), ends.end());
        for (const auto& [x, p] : next) {
            if (!level.c_prime.contains(x)) {
                ++ls.c_prime_added;
                candidates.insert(x);
            }
        }
        for (const auto& [x, p] : level.c_prime) {
            if (!next.contains(x)) {
                ++ls.c_prime_removed;
                candidates.insert(x);
            }
        }
        level.c_prime = std::move(next);
        if (level.in_cover.size() < g.vertex_capacity()) level.in_cover.resize(g.vertex_capacity(), 0);
        left_below.clear();
        for (VertexId x : candidates) {
            const bool was = level.covers(x);
            const bool now = level.c_prime.contains(x) || (g.has_vertex(x) && g.max_incident_level(x) >= li);
            set_cover(level, x, now);
            if (was && !now) left_below.push_back(x);
        }
        if (level.cover_size == 0) {
            truncated = true;
            break;
        }

        // G*[i]: drop every edge with an end near the update, then search again.
        const Base edge_r = sat_mul(pow8(li), 5);
        post.grow(edge_r);
        const auto near = post.members(edge_r);
        ls.edge_region = near.size();
        std::unordered_set<VertexId> region(near.begin(), near.end());
        region.insert(vanished.begin(), vanished.end());
        std::map<std::pair<VertexId, VertexId>, EdgeKey> removed;
        for (VertexId x : region) {
            const auto inc = level.graph.incident(x);
            for (std::uint32_t idx : std::vector<std::uint32_t>(inc.begin(), inc.end())) {
                const ShortcutEdge& e = level.graph.edge(idx);
                removed[{e.a, e.b}] = EdgeKey{e.weight, e.maxedge_below, e.children};
                level.graph.remove(idx);
            }
        }
        std::vector<VertexId> edge_sources;
        for (VertexId x : near) {
            if (level.covers(x)) edge_sources.push_back(x);
        }
        std::sort(edge_sources.begin(), edge_sources.end());
        std::set<VertexId> adjacency_changed;
        std::vector<detail::FoundShortcut> found;
        for (VertexId a : edge_sources) {
            detail::shortcuts_from(view, a, pow8(li), level.in_cover, search, found);
            ++work.searches;
            work.settled += search.settled().size();
            for (auto& f : found) {
                if (region.contains(f.other) && f.other < a) continue;
                const std::uint32_t idx = detail::insert_shortcut(level.graph, a, std::move(f));
                const ShortcutEdge& e = level.graph.edge(idx);
                auto it = removed.find({e.a, e.b});
                if (it != removed.end() && it->second == EdgeKey{e.weight, e.maxedge_below, e.children}) {
                    removed.erase(it);
                    continue;
                }
                if (it != removed.end()) removed.erase(it);
                ++ls.edges_added;
                adjacency_changed.insert(e.a);
                adjacency_changed.insert(e.b);
            }
        }
        for (const auto& [ab, key] : removed) {
            ++ls.edges_removed;
            adjacency_changed.insert(ab.first);
            adjacency_changed.insert(ab.second);
        }
        ls.pairs_considered = work.pairs_considered;
        ls.settled = work.settled;
        ls.touched = ls.c_prime_added + ls.c_prime_removed + adjacency_changed.size();
        stats.levels.push_back(ls);
    }

    if (truncated) {
        for (std::size_t k = i; k < levels.size(); ++k) {
            LevelUpdateStats ls;
            ls.level = static_cast<int>(k);
            ls.touched = levels[k].cover_size + levels[k].graph.edge_count();
            ls.c_prime_removed = levels[k].c_prime.size();
            stats.levels.push_back(ls);
        }
        levels.resize(i);
    } else {
        // The old top level may now need a cover above it.
        for (int k = static_cast<int>(levels.size());; ++k) {
            if (k >= 64) throw HierarchyError("level cap exceeded during update");
            LevelBuildStats work;
            Level level = build_level(g, k, &levels.back(), &work);
            if (level.cover_size == 0) break;
            LevelUpdateStats ls;
            ls.level = k;
            ls.rebuilt = true;
            ls.c_prime_added = level.c_prime.size();
            ls.edges_added = level.graph.edge_count();
            ls.pairs_considered = work.pairs_considered;
            ls.settled = work.settled;
            ls.touched = level.cover_size + level.graph.edge_count();
            levels.push_back(std::move(level));
            stats.levels.push_back(ls);
        }
    }
    stats.top_after = h.top();
    return stats;
}

VerifyReport update_and_verify(Hierarchy& h, const UpdateRequest& request,
                               std::span<const std::pair<VertexId, VertexId>> pairs, bool check_covers) {
    VerifyReport report;
    try {
        report.update = apply_update(h, request);
    } catch (const UpdateError& e) {
        report.failures.push_back(std::string("rejected: ") + e.what());
        return report;
    }
    const Graph& g = h.graph();
    for (const auto& [s, t] : pairs) {
        if (!g.has_vertex(s) || !g.has_vertex(t)) continue;
        ++report.pairs_checked;
        const PerturbedWeight expect = dijkstra_point_to_point(g, s, t).dist;
        const PerturbedWeight got = query_distance(h, s, t);
        if (got != expect) {
            ++report.mismatches;
            std::ostringstream os;
            os << "query " << s << "-" << t << " returned " << got.base << ", expected " << expect.base;
            report.failures.push_back(os.str());
        }
    }
    if (check_covers) {
        const AllPairs oracle(g);
        const HierarchyReport covers = check_hierarchy_covers(h, oracle);
        const HierarchyReport structure = check_structure(h, &oracle, false);
        report.sparsity = covers.sparsity;
        report.failures.insert(report.failures.end(), covers.failures.begin(), covers.failures.end());
        report.failures.insert(report.failures.end(), structure.failures.begin(), structure.failures.end());
    }
    return report;
}

}  // namespace hdr
