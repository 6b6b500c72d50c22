#pragma once

// Random update streams for the dynamic tests. Each proposal is meant to be
// valid, but the hierarchy may still reject it (collateral usefulness,
// connectivity); callers retry.

#include <random>
#include <vector>

#include "hdr/dijkstra.hpp"
#include "hdr/dynamic.hpp"

namespace testing {

inline hdr::UpdateRequest propose_update(const hdr::Graph& g, std::mt19937_64& rng) {
    using namespace hdr;
    const auto vs = g.vertices();
    const auto es = g.edge_ids();
    const int kind = static_cast<int>(rng() % 3);
    if (kind == 0) {
        const VertexId a = vs[rng() % vs.size()];
        if (rng() % 8 == 0) {
            // Pendant vertex with a fresh id.
            return {UpdateKind::insert, a, static_cast<VertexId>(g.vertex_capacity()), 1 + rng() % 12};
        }
        // Partner a few hops away, weight below the current distance.
        VertexId b = a;
        const int hops = 2 + static_cast<int>(rng() % 3);
        for (int k = 0; k < hops; ++k) {
            const auto nb = g.neighbors(b);
            b = nb[rng() % nb.size()].to;
        }
        if (b == a || g.find_edge(a, b)) return propose_update(g, rng);
        const Base d = dijkstra_point_to_point(g, a, b).dist.base;
        const Base w = d <= 1 ? 1 : 1 + rng() % (d - 1);
        return {UpdateKind::insert, a, b, w};
    }
    const Edge& e = g.edge(es[rng() % es.size()]);
    if (kind == 1) return {UpdateKind::remove, e.u, e.v, 0};
    const Base w = e.weight.base;
    const Base next = (w == 1 || rng() % 2 == 0) ? w + 1 + rng() % (2 * w + 4) : 1 + rng() % (w - 1);
    return {UpdateKind::reweight, e.u, e.v, next};
}

inline std::vector<std::pair<hdr::VertexId, hdr::VertexId>> sample_pairs(const hdr::Graph& g, std::size_t n,
                                                                          std::mt19937_64& rng) {
    const auto vs = g.vertices();
    std::vector<std::pair<hdr::VertexId, hdr::VertexId>> out;
    for (std::size_t k = 0; k < n; ++k) out.emplace_back(vs[rng() % vs.size()], vs[rng() % vs.size()]);
    return out;
}

}  // namespace testing
