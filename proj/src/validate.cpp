#include "hdr/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "hdr/query.hpp"

namespace hdr {

namespace {

template <typename... Parts>
std::string cat(const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

std::vector<char> flags_of(const Graph& g, std::span<const VertexId> cover) {
    std::vector<char> in(g.vertex_capacity(), 0);
    for (VertexId v : cover) {
        if (v < in.size()) in[v] = 1;
    }
    return in;
}

bool flag(std::span<const char> f, VertexId v) { return v < f.size() && f[v]; }

// Largest level whose cover holds v, or -1.
std::vector<int> vertex_levels(const Hierarchy& h) {
    std::vector<int> out(h.graph().vertex_capacity(), -1);
    for (const Level& level : h.levels()) {
        for (VertexId v = 0; v < out.size(); ++v) {
            if (level.covers(v)) out[v] = level.index;
        }
    }
    return out;
}

}  // namespace

AllPairs::AllPairs(const Graph& g) : trees_(g.vertex_capacity()) {
    for (VertexId s : g.vertices()) trees_[s] = dijkstra_full(g, s);
}

std::size_t HierarchyReport::max_sparsity() const {
    return sparsity.empty() ? 0 : *std::max_element(sparsity.begin(), sparsity.end());
}

CoverReport check_vertex_cover(const Graph& g, std::span<const char> in_cover, Base r) {
    CoverReport report;
    const std::size_t n = g.vertex_capacity();
    std::vector<char> hit(n, 0);
    std::vector<PerturbedWeight> maxedge(n);
    const Base twice = sat_mul(r, 2);
    for (VertexId s : g.vertices()) {
        const ShortestPathTree tree = dijkstra_full(g, s);
        std::size_t in_ball = 0;
        for (VertexId t : tree.settled()) {
            const TreeLabel& l = tree.label(t);
            if (l.parent == kNoVertex) {
                hit[t] = flag(in_cover, t);
                maxedge[t] = PerturbedWeight::zero();
            } else {
                hit[t] = hit[l.parent] || flag(in_cover, t);
                maxedge[t] = std::max(maxedge[l.parent], g.edge(l.parent_edge).weight);
            }
            if (l.dist.base <= twice && flag(in_cover, t)) ++in_ball;
            if (t > s && l.dist.base > r && maxedge[t].base <= r && !hit[t]) report.uncovered.emplace_back(s, t);
        }
        report.sparsity = std::max(report.sparsity, in_ball);
    }
    std::sort(report.uncovered.begin(), report.uncovered.end());
    return report;
}

CoverReport check_vertex_cover(const Graph& g, std::span<const VertexId> cover, Base r) {
    const auto in = flags_of(g, cover);
    return check_vertex_cover(g, std::span<const char>(in), r);
}

HierarchyReport check_hierarchy_covers(const Hierarchy& h, const AllPairs& oracle) {
    const Graph& g = h.graph();
    HierarchyReport report;
    const int top = h.top();
    report.sparsity.assign(static_cast<std::size_t>(top), 0);
    const auto vlevel = vertex_levels(h);
    const std::size_t n = g.vertex_capacity();
    std::vector<int> best(n, -1);
    std::vector<PerturbedWeight> maxedge(n);
    std::size_t reported = 0;
    for (VertexId s : g.vertices()) {
        const ShortestPathTree& tree = oracle.from(s);
        std::vector<std::size_t> in_ball(static_cast<std::size_t>(top), 0);
        for (VertexId t : tree.settled()) {
            const TreeLabel& l = tree.label(t);
            if (l.parent == kNoVertex) {
                best[t] = vlevel[t];
                maxedge[t] = PerturbedWeight::zero();
            } else {
                best[t] = std::max(best[l.parent], vlevel[t]);
                maxedge[t] = std::max(maxedge[l.parent], g.edge(l.parent_edge).weight);
            }
            for (int i = 0; i <= vlevel[t] && i < top; ++i) {
                if (l.dist.base <= sat_mul(pow8(i), 2)) ++in_ball[static_cast<std::size_t>(i)];
            }
            if (t <= s) continue;
            // Highest level whose radius the pair exceeds; every level from
            // edge_level(maxedge) up to it must hit the path.
            int need = -1;
            while (need + 1 < 64 && pow8(need + 1) < l.dist.base) ++need;
            if (need < 0 || edge_level(maxedge[t].base) > need) continue;
            if (best[t] < need && reported++ < 20) {
                report.failures.push_back(cat("pair (", s, ",", t, ") at distance ", l.dist.base,
                                              " is not covered at level ", need));
            }
        }
        for (int i = 0; i < top; ++i) {
            auto& k = report.sparsity[static_cast<std::size_t>(i)];
            k = std::max(k, in_ball[static_cast<std::size_t>(i)]);
        }
    }
    if (reported > 20) report.failures.push_back(cat(reported - 20, " further uncovered pairs"));
    return report;
}

HierarchyReport check_shortcut_preservation(const Hierarchy& h, const AllPairs& oracle) {
    const Graph& g = h.graph();
    HierarchyReport report;
    std::size_t reported = 0;
    const std::size_t n = g.vertex_capacity();
    std::vector<PerturbedWeight> maxedge(n);
    std::vector<PerturbedWeight> dist(n);
    for (const Level& level : h.levels()) {
        const Base r = level.radius();
        for (VertexId s : level.cover()) {
            // Dijkstra over G[i] from s.
            std::fill(dist.begin(), dist.end(), PerturbedWeight::infinity());
            using Entry = std::pair<PerturbedWeight, VertexId>;
            std::set<Entry> heap;
            dist[s] = PerturbedWeight::zero();
            heap.insert({dist[s], s});
            while (!heap.empty()) {
                auto [d, x] = *heap.begin();
                heap.erase(heap.begin());
                for (std::uint32_t idx : level.graph.incident(x)) {
                    const ShortcutEdge& e = level.graph.edge(idx);
                    const VertexId y = e.other(x);
                    const PerturbedWeight nd = d + e.weight;
                    if (nd < dist[y]) {
                        heap.erase({dist[y], y});
                        dist[y] = nd;
                        heap.insert({nd, y});
                    }
                }
            }
            const ShortestPathTree& tree = oracle.from(s);
            for (VertexId t : tree.settled()) {
                const TreeLabel& l = tree.label(t);
                maxedge[t] = l.parent == kNoVertex
                                 ? PerturbedWeight::zero()
                                 : std::max(maxedge[l.parent], g.edge(l.parent_edge).weight);
                if (!level.covers(t) || t == s) continue;
                if (dist[t] < l.dist) {
                    if (reported++ < 20) {
                        report.failures.push_back(cat("level ", level.index, ": G[i] distance ", s, "-", t,
                                                      " undercuts the graph distance"));
                    }
                } else if (maxedge[t].base <= r && dist[t] != l.dist) {
                    if (reported++ < 20) {
                        report.failures.push_back(cat("level ", level.index, ": distance ", s, "-", t,
                                                      " not preserved (", l.dist.base, " vs ",
                                                      dist[t].is_infinite() ? std::string("inf")
                                                                            : std::to_string(dist[t].base),
                                                      ")"));
                    }
                }
            }
        }
    }
    if (reported > 20) report.failures.push_back(cat(reported - 20, " further preservation failures"));
    return report;
}

HierarchyReport check_structure(const Hierarchy& h, const AllPairs* oracle, bool strict_provenance) {
    const Graph& g = h.graph();
    HierarchyReport report;
    auto fail = [&](std::string msg) {
        if (report.failures.size() < 40) report.failures.push_back(std::move(msg));
    };
    const auto partition = partition_edges(g);
    if (static_cast<int>(partition.size()) > h.top()) fail(cat("edges above level ", h.top() - 1, " exist"));
    if (h.top() == 0) fail("hierarchy has no levels");

    for (const Level& level : h.levels()) {
        const int i = level.index;
        const Level* below = i > 0 ? &h.level(i - 1) : nullptr;
        // Composition and nesting.
        std::size_t count = 0;
        for (VertexId v = 0; v < g.vertex_capacity(); ++v) {
            const bool expect = g.has_vertex(v) && (level.in_c_prime(v) || g.max_incident_level(v) >= i);
            if (level.covers(v) != expect) fail(cat("level ", i, ": membership of vertex ", v, " is wrong"));
            if (level.covers(v)) ++count;
            if (level.covers(v) && below && !below->covers(v)) fail(cat("level ", i, ": vertex ", v, " not nested"));
        }
        if (count != level.cover_size) fail(cat("level ", i, ": cover size ", level.cover_size, " != ", count));
        if (count == 0) fail(cat("level ", i, " is empty but below top"));
        const std::vector<EdgeId> expect_long =
            static_cast<std::size_t>(i) < partition.size() ? partition[static_cast<std::size_t>(i)]
                                                           : std::vector<EdgeId>{};
        if (level.long_edges != expect_long) fail(cat("level ", i, ": E[i] mismatch"));
        if (i == 0 && !level.c_prime.empty()) fail("C'[0] must be empty");

        for (const auto& [v, prov] : level.c_prime) {
            if (!below || !below->covers(v)) fail(cat("level ", i, ": C' vertex ", v, " not in C[i-1]"));
            if (!strict_provenance) continue;
            if (!below || !below->covers(prov.first) || !below->covers(prov.second) || prov.first >= prov.second) {
                fail(cat("level ", i, ": bad provenance for ", v));
                continue;
            }
            if (oracle) {
                const PathResult p = oracle->from(prov.first).path_to(g, prov.second);
                const Base d = p.total.base;
                if (d < 6 * pow8(i - 1) || d > pow8(i) || p.maxedge.base > pow8(i - 1)) {
                    fail(cat("level ", i, ": provenance pair of ", v, " fails the window"));
                }
                if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end()) {
                    fail(cat("level ", i, ": ", v, " not on its generating path"));
                }
            }
        }

        // Shortcut edges.
        const Base r = level.radius();
        std::map<std::pair<VertexId, VertexId>, std::uint32_t> pairs;
        std::size_t incidences = 0;
        for (std::uint32_t idx : level.graph.live_indices()) {
            const ShortcutEdge& e = level.graph.edge(idx);
            const std::string where = cat("level ", i, " edge ", e.a, "-", e.b);
            if (e.a >= e.b) fail(where + ": endpoints not ordered");
            if (!level.covers(e.a) || !level.covers(e.b)) fail(where + ": endpoint outside C[i]");
            if (e.weight.base > r) fail(where + ": weight above radius");
            if (!pairs.emplace(std::pair{e.a, e.b}, idx).second) fail(where + ": parallel shortcut");
            for (const EdgeRef& c : e.children) {
                const bool ok = c.is_original()
                                    ? g.has_edge(c.index) && (i == 0 || edge_level(g.edge(c.index).weight.base) == i)
                                    : c.level == i - 1 && below && below->graph.alive(c.index);
                if (!ok) fail(where + ": bad child reference");
            }
            if (i == 0 && e.children.size() != 1) fail(where + ": level-0 edge must wrap one original edge");
            std::vector<EdgeId> path;
            try {
                VertexId end = e.a;
                for (const EdgeRef& c : e.children) end = append_expansion(h, c, end, path);
                if (end != e.b) fail(where + ": children end at the wrong vertex");
            } catch (const std::exception& ex) {
                fail(where + ": " + ex.what());
                continue;
            }
            const PathResult p = path_from_edges(g, e.a, path);
            if (p.total != e.weight) fail(where + ": children do not sum to the weight");
            if (p.maxedge != e.maxedge_below) fail(where + ": maxedge_below mismatch");
            for (std::size_t k = 1; k + 1 < p.vertices.size(); ++k) {
                if (level.covers(p.vertices[k])) fail(where + ": interior cover vertex " + std::to_string(p.vertices[k]));
            }
            if (oracle && oracle->dist(e.a, e.b) != e.weight) fail(where + ": weight is not the graph distance");
        }
        for (VertexId v = 0; v < g.vertex_capacity(); ++v) {
            for (std::uint32_t idx : level.graph.incident(v)) {
                ++incidences;
                if (!level.graph.alive(idx) || (level.graph.edge(idx).a != v && level.graph.edge(idx).b != v)) {
                    fail(cat("level ", i, ": stale incidence at ", v));
                }
            }
        }
        if (incidences != 2 * level.graph.edge_count()) fail(cat("level ", i, ": incidence count mismatch"));

        // Completeness against the definition of G(C[i], 8^i).
        if (oracle) {
            std::vector<char> hit(g.vertex_capacity(), 0);
            for (VertexId s : level.cover()) {
                const ShortestPathTree& tree = oracle->from(s);
                for (VertexId t : tree.settled()) {
                    const TreeLabel& l = tree.label(t);
                    if (l.dist.base > r) break;
                    hit[t] = l.parent != kNoVertex &&
                             (hit[l.parent] || (l.parent != s && level.covers(l.parent)));
                    if (t > s && level.covers(t) && !hit[t] && !pairs.contains({s, t})) {
                        fail(cat("level ", i, ": missing shortcut ", s, "-", t));
                    }
                }
            }
        }
    }
    return report;
}

HierarchyReport validate_hierarchy(const Hierarchy& h, bool strict_provenance) {
    const AllPairs oracle(h.graph());
    HierarchyReport out = check_structure(h, &oracle, strict_provenance);
    const HierarchyReport covers = check_hierarchy_covers(h, oracle);
    const HierarchyReport preserved = check_shortcut_preservation(h, oracle);
    out.failures.insert(out.failures.end(), covers.failures.begin(), covers.failures.end());
    out.failures.insert(out.failures.end(), preserved.failures.begin(), preserved.failures.end());
    out.sparsity = covers.sparsity;
    return out;
}

}  // namespace hdr
