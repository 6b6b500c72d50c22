#include "hdr/dijkstra.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <tuple>

namespace hdr {

namespace {

using HeapEntry = std::pair<PerturbedWeight, VertexId>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>>;

void require_vertex(const Graph& g, VertexId v) {
    if (!g.has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
}

enum class TieRule { keep_first, take_last };

// Parent tree for one source; `rule` decides what happens on an exact tie.
std::vector<TreeLabel> tree_with_rule(const Graph& g, VertexId source, TieRule rule) {
    std::vector<TreeLabel> labels(g.vertex_capacity());
    std::vector<char> done(g.vertex_capacity(), 0);
    MinHeap heap;
    labels[source].dist = PerturbedWeight::zero();
    heap.push({PerturbedWeight::zero(), source});
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (done[x] || d != labels[x].dist) continue;
        done[x] = 1;
        for (const Incidence& inc : g.neighbors(x)) {
            if (done[inc.to]) continue;
            const PerturbedWeight nd = d + g.edge(inc.edge).weight;
            TreeLabel& l = labels[inc.to];
            const bool better = nd < l.dist || (rule == TieRule::take_last && nd == l.dist);
            if (better) {
                const bool pushed = nd < l.dist;
                l = {nd, inc.edge, x};
                if (pushed) heap.push({nd, inc.to});
            }
        }
    }
    return labels;
}

}  // namespace

PathResult ShortestPathTree::path_to(const Graph& g, VertexId target) const {
    if (!reached(target)) throw GraphError("vertex " + std::to_string(target) + " unreachable");
    PathResult out;
    VertexId x = target;
    out.vertices.push_back(x);
    while (labels_[x].parent_edge != kNoEdge) {
        const EdgeId e = labels_[x].parent_edge;
        out.edges.push_back(e);
        out.maxedge = std::max(out.maxedge, g.edge(e).weight);
        x = labels_[x].parent;
        out.vertices.push_back(x);
    }
    std::reverse(out.vertices.begin(), out.vertices.end());
    std::reverse(out.edges.begin(), out.edges.end());
    // Totals exclude any seed offset.
    for (EdgeId e : out.edges) out.total += g.edge(e).weight;
    return out;
}

ShortestPathTree dijkstra_bounded(const Graph& g, std::span<const Seed> seeds, PerturbedWeight radius) {
    ShortestPathTree tree(g.vertex_capacity());
    auto& labels = tree.labels_;
    std::vector<char> done(g.vertex_capacity(), 0);
    MinHeap heap;
    for (const auto& [v, w] : seeds) {
        require_vertex(g, v);
        if (w <= radius && w < labels[v].dist) {
            labels[v] = {w, kNoEdge, kNoVertex};
            heap.push({w, v});
        }
    }
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (done[x] || d != labels[x].dist) continue;
        done[x] = 1;
        tree.settled_.push_back(x);
        for (const Incidence& inc : g.neighbors(x)) {
            if (done[inc.to]) continue;
            const PerturbedWeight nd = d + g.edge(inc.edge).weight;
            if (nd > radius) continue;
            if (nd < labels[inc.to].dist) {
                labels[inc.to] = {nd, inc.edge, x};
                heap.push({nd, inc.to});
            }
        }
    }
    // Anything labeled but never settled lies beyond the radius.
    for (VertexId v = 0; v < labels.size(); ++v) {
        if (!done[v]) labels[v] = TreeLabel{};
    }
    return tree;
}

ShortestPathTree dijkstra_full(const Graph& g, VertexId source) {
    const Seed seed{source, PerturbedWeight::zero()};
    return dijkstra_bounded(g, std::span<const Seed>(&seed, 1), PerturbedWeight::infinity());
}

std::vector<VertexId> ball(const Graph& g, VertexId center, PerturbedWeight radius) {
    require_vertex(g, center);
    const Seed seed{center, PerturbedWeight::zero()};
    auto tree = dijkstra_bounded(g, std::span<const Seed>(&seed, 1), radius);
    std::vector<VertexId> out = tree.settled();
    std::sort(out.begin(), out.end());
    return out;
}

PathResult shortest_path(const Graph& g, VertexId from, VertexId to) {
    require_vertex(g, from);
    require_vertex(g, to);
    return dijkstra_full(g, from).path_to(g, to);
}

PointToPoint dijkstra_point_to_point(const Graph& g, VertexId from, VertexId to) {
    require_vertex(g, from);
    require_vertex(g, to);
    std::vector<PerturbedWeight> dist(g.vertex_capacity(), PerturbedWeight::infinity());
    std::vector<char> done(g.vertex_capacity(), 0);
    MinHeap heap;
    dist[from] = PerturbedWeight::zero();
    heap.push({dist[from], from});
    PointToPoint out;
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (done[x] || d != dist[x]) continue;
        done[x] = 1;
        ++out.settled;
        if (x == to) {
            out.dist = d;
            return out;
        }
        for (const Incidence& inc : g.neighbors(x)) {
            const PerturbedWeight nd = d + g.edge(inc.edge).weight;
            if (nd < dist[inc.to]) {
                dist[inc.to] = nd;
                heap.push({nd, inc.to});
            }
        }
    }
    throw GraphError("vertex " + std::to_string(to) + " unreachable");
}

UniquenessReport verify_unique_shortest_paths(const Graph& g) {
    UniquenessReport report;
    for (VertexId s : g.vertices()) {
        const auto first = tree_with_rule(g, s, TieRule::keep_first);
        const auto last = tree_with_rule(g, s, TieRule::take_last);
        ++report.sources_checked;
        for (VertexId t = 0; t < first.size(); ++t) {
            if (t == s || !g.has_vertex(t)) continue;
            if (first[t].parent_edge != last[t].parent_edge) report.violations.emplace_back(s, t);
        }
    }
    return report;
}

}  // namespace hdr
