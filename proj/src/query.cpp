#include "hdr/query.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace hdr {

namespace {

using Entry = std::pair<PerturbedWeight, VertexId>;
using MinHeap = std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>>;

void require_vertex(const Hierarchy& h, VertexId v) {
    if (!h.graph().has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
}

void offer_meet(FunnelSearchState& st, int side, VertexId x) {
    const auto& other = st.labels[static_cast<std::size_t>(1 - side)];
    auto it = other.find(x);
    if (it == other.end()) return;
    const PerturbedWeight total = st.labels[static_cast<std::size_t>(side)].at(x).dist + it->second.dist;
    if (!st.best_meet || total < st.best_meet->second) st.best_meet = {x, total};
}

// One side's Dijkstra over G[i] from the seeds left by level i-1.
void advance_side(const Hierarchy& h, FunnelSearchState& st, int side, int i) {
    const Level& level = h.level(i);
    auto& labels = st.labels[static_cast<std::size_t>(side)];
    auto& frontier = st.frontier[static_cast<std::size_t>(side)];
    const Base radius = funnel_radius(i);
    MinHeap heap;
    for (VertexId v : frontier) {
        if (level.covers(v)) heap.push({labels.at(v).dist, v});
    }
    frontier.clear();
    std::unordered_map<VertexId, char> done;
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (done.contains(x) || d != labels.at(x).dist) continue;
        done.emplace(x, 1);
        frontier.push_back(x);
        ++st.stats.settled;
        offer_meet(st, side, x);
        for (std::uint32_t idx : level.graph.incident(x)) {
            const ShortcutEdge& e = level.graph.edge(idx);
            const VertexId y = e.other(x);
            const PerturbedWeight nd = d + e.weight;
            if (nd.base > radius) continue;
            if (st.best_meet && !(nd < st.best_meet->second)) continue;
            auto it = labels.find(y);
            if (it != labels.end() && !(nd < it->second.dist)) continue;
            labels[y] = FunnelLabel{nd, x, EdgeRef{i, idx}};
            heap.push({nd, y});
        }
    }
}

}  // namespace

Base funnel_radius(int level) { return pow8(level + 1); }

FunnelSearchState funnel_search(const Hierarchy& h, VertexId origin, VertexId destination) {
    require_vertex(h, origin);
    require_vertex(h, destination);
    FunnelSearchState st;
    st.labels[0][origin] = FunnelLabel{PerturbedWeight::zero(), kNoVertex, {}};
    st.labels[1][destination] = FunnelLabel{PerturbedWeight::zero(), kNoVertex, {}};
    st.frontier[0] = {origin};
    st.frontier[1] = {destination};
    if (origin == destination) st.best_meet = {origin, PerturbedWeight::zero()};
    for (int i = 0; i < h.top(); ++i) {
        if (st.frontier[0].empty() && st.frontier[1].empty()) break;
        st.level = i;
        advance_side(h, st, 0, i);
        advance_side(h, st, 1, i);
        ++st.stats.levels_searched;
    }
    return st;
}

PerturbedWeight query_distance(const Hierarchy& h, VertexId origin, VertexId destination, QueryStats* stats) {
    const auto st = funnel_search(h, origin, destination);
    if (stats) *stats = st.stats;
    if (!st.best_meet) throw GraphError("no meeting vertex found between " + std::to_string(origin) + " and " +
                                        std::to_string(destination));
    return st.best_meet->second;
}

VertexId append_expansion(const Hierarchy& h, EdgeRef ref, VertexId from, std::vector<EdgeId>& out) {
    if (ref.is_original()) {
        if (!h.graph().has_edge(ref.index)) throw HierarchyError("dangling original edge reference");
        const Edge& e = h.graph().edge(ref.index);
        if (from != e.u && from != e.v) throw HierarchyError("edge expansion is not contiguous");
        out.push_back(ref.index);
        return e.other(from);
    }
    const ShortcutEdge& e = h.shortcut(ref);
    VertexId at = from;
    if (from == e.a) {
        for (const EdgeRef& child : e.children) at = append_expansion(h, child, at, out);
    } else if (from == e.b) {
        for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) at = append_expansion(h, *it, at, out);
    } else {
        throw HierarchyError("edge expansion is not contiguous");
    }
    return at;
}

std::vector<EdgeId> expand_edge(const Hierarchy& h, int level, std::uint32_t index) {
    const EdgeRef ref{level, index};
    std::vector<EdgeId> out;
    const VertexId end = append_expansion(h, ref, h.shortcut(ref).a, out);
    if (end != h.shortcut(ref).b) throw HierarchyError("shortcut expansion ends at the wrong vertex");
    return out;
}

PathResult path_from_edges(const Graph& g, VertexId start, std::vector<EdgeId> edges) {
    PathResult out;
    out.vertices.push_back(start);
    VertexId at = start;
    for (EdgeId id : edges) {
        const Edge& e = g.edge(id);
        at = e.other(at);
        out.vertices.push_back(at);
        out.total += e.weight;
        out.maxedge = std::max(out.maxedge, e.weight);
    }
    out.edges = std::move(edges);
    return out;
}

PathResult query_path(const Hierarchy& h, VertexId origin, VertexId destination, QueryStats* stats) {
    const auto st = funnel_search(h, origin, destination);
    if (stats) *stats = st.stats;
    if (!st.best_meet) throw GraphError("no meeting vertex found between " + std::to_string(origin) + " and " +
                                        std::to_string(destination));
    const VertexId meet = st.best_meet->first;

    std::vector<EdgeRef> up;  // origin -> meet
    for (VertexId x = meet; x != origin;) {
        const FunnelLabel& l = st.labels[0].at(x);
        up.push_back(l.via);
        x = l.parent;
    }
    std::reverse(up.begin(), up.end());
    std::vector<EdgeId> edges;
    VertexId at = origin;
    for (const EdgeRef& ref : up) at = append_expansion(h, ref, at, edges);
    for (VertexId x = meet; x != destination;) {
        const FunnelLabel& l = st.labels[1].at(x);
        at = append_expansion(h, l.via, at, edges);
        x = l.parent;
    }
    if (at != destination) throw HierarchyError("expanded path does not end at the destination");
    return path_from_edges(h.graph(), origin, std::move(edges));
}

}  // namespace hdr
