#include "doctest.h"
#include "helpers.hpp"
#include "reference.hpp"
#include "hdr/query.hpp"
#include "hdr/validate.hpp"

using namespace hdr;
using testing::build_of;
using testing::c_prime_ids;
using testing::graph_of;

namespace {

std::vector<std::vector<RawEdge>> small_suite() {
    std::vector<std::vector<RawEdge>> out;
    out.push_back(make_path(17));
    out.push_back(make_path(60));
    out.push_back(generate({.kind = GraphKind::star, .rows = 12}));
    out.push_back(make_grid(8, 8));
    out.push_back(make_grid(9, 7, WeightKind::uniform, 4));
    out.push_back(make_grid(8, 8, WeightKind::geometric, 2));
    out.push_back(generate({.kind = GraphKind::path, .rows = 40, .weights = WeightKind::geometric, .seed = 8}));
    out.push_back(generate({.kind = GraphKind::road_like, .rows = 150, .seed = 5}));
    out.push_back(generate({.kind = GraphKind::road_like, .rows = 100, .weights = WeightKind::geometric, .seed = 6}));
    return out;
}

}  // namespace

TEST_CASE("partition examples") {
    const auto unit = partition_edges(graph_of(make_grid(4, 4)));
    REQUIRE(unit.size() == 1);
    CHECK(unit[0].size() == 24);

    const Graph g = graph_of({{0, 1, 1}, {1, 2, 8}, {2, 3, 9}, {3, 4, 64}});
    const auto p = partition_edges(g);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == std::vector<EdgeId>{*g.find_edge(0, 1)});
    CHECK(p[1] == std::vector<EdgeId>{*g.find_edge(1, 2)});
    CHECK(p[2].size() == 2);

    const auto q = partition_edges(graph_of({{0, 1, 1}, {1, 2, 100}}));
    REQUIRE(q.size() == 4);
    CHECK(q[0].size() == 1);
    CHECK(q[1].empty());
    CHECK(q[2].empty());
    CHECK(q[3].size() == 1);
}

TEST_CASE("17-path hierarchy") {
    const Hierarchy h = build_of(make_path(17));
    REQUIRE(h.top() == 2);
    CHECK(h.level(0).cover_size == 17);
    CHECK(h.level(0).graph.edge_count() == 16);
    CHECK(c_prime_ids(h.level(1)) == std::vector<VertexId>{3, 7, 11});
    CHECK(h.level(1).c_prime.at(3) == Provenance{0, 6});
    CHECK(h.level(1).c_prime.at(7) == Provenance{4, 10});
    CHECK(h.level(1).c_prime.at(11) == Provenance{8, 14});
    CHECK(h.level(1).cover() == std::vector<VertexId>{3, 7, 11});

    const ShortcutGraph& g1 = h.level(1).graph;
    REQUIRE(g1.edge_count() == 2);
    std::vector<std::pair<VertexId, VertexId>> ends;
    for (auto idx : g1.live_indices()) {
        ends.emplace_back(g1.edge(idx).a, g1.edge(idx).b);
        CHECK(g1.edge(idx).weight.base == 4);
    }
    CHECK(ends == std::vector<std::pair<VertexId, VertexId>>{{3, 7}, {7, 11}});
    CHECK(validate_hierarchy(h).ok());
}

TEST_CASE("single edge hierarchy") {
    const Hierarchy h = build_of({{0, 1, 1}});
    CHECK(h.top() == 1);
    CHECK(h.level(0).cover_size == 2);
    CHECK(h.level(0).graph.edge_count() == 1);
}

TEST_CASE("star has no constructed cover") {
    const Hierarchy h = build_of(generate({.kind = GraphKind::star, .rows = 10}));
    CHECK(h.top() == 1);
}

TEST_CASE("long-edge endpoints do not suppress midpoint additions") {
    // 0-1 and 8-9 are level-1 edges; the unit chain 1..8 between them has
    // qualifying pairs whose paths hold the long-edge endpoints 1 and 8.
    std::vector<RawEdge> raw{{0, 1, 5}, {8, 9, 5}};
    for (VertexId v = 1; v < 8; ++v) raw.push_back({v, v + 1, 1});
    const Hierarchy h = build_of(raw);
    REQUIRE(h.top() >= 2);
    const Level& l1 = h.level(1);
    CHECK(l1.covers(0));
    CHECK(l1.covers(1));
    CHECK(l1.covers(8));
    CHECK(l1.covers(9));
    // (1,7) has length 6 and maxedge 1; midpoint 4 joins although 1 is in C[1].
    CHECK(l1.in_c_prime(4));
    CHECK(l1.c_prime.at(4) == Provenance{1, 7});
    CHECK(validate_hierarchy(h).ok());
}

TEST_CASE("shortcut graph examples") {
    const Graph g = graph_of(make_path(17));
    std::vector<char> all(17, 1);
    const ShortcutGraph full = build_shortcut_graph(g, all, 1);
    CHECK(full.edge_count() == 16);

    std::vector<char> c(17, 0);
    c[3] = c[7] = c[11] = 1;
    const ShortcutGraph sg = build_shortcut_graph(g, c, 8);
    CHECK(sg.edge_count() == 2);
    for (auto idx : sg.live_indices()) CHECK(sg.edge(idx).b - sg.edge(idx).a == 4);

    std::vector<char> one(17, 0);
    one[5] = 1;
    CHECK(build_shortcut_graph(g, one, 8).edge_count() == 0);

    std::vector<char> bogus(20, 0);
    bogus[19] = 1;
    CHECK_THROWS_AS(build_shortcut_graph(g, bogus, 8), HierarchyError);
}

TEST_CASE("expand_edge examples") {
    const Hierarchy h = build_of(make_path(17));
    const auto& g1 = h.level(1).graph;
    for (auto idx : g1.live_indices()) {
        if (g1.edge(idx).a != 3) continue;
        const auto edges = expand_edge(h, 1, idx);
        REQUIRE(edges.size() == 4);
        for (std::size_t k = 0; k < 4; ++k) {
            const Edge& e = h.graph().edge(edges[k]);
            CHECK(e.u == 3 + k);
            CHECK(e.v == 4 + k);
        }
    }
    const auto e0 = expand_edge(h, 0, h.level(0).graph.live_indices().front());
    CHECK(e0.size() == 1);

    // A single long edge is its own shortcut one level up.
    const Hierarchy lh = build_of({{0, 1, 1}, {1, 2, 5}, {2, 3, 1}});
    bool seen = false;
    for (auto idx : lh.level(1).graph.live_indices()) {
        const auto& e = lh.level(1).graph.edge(idx);
        if (e.a == 1 && e.b == 2) {
            seen = true;
            CHECK(e.children.size() == 1);
            CHECK(e.children[0].is_original());
            CHECK(expand_edge(lh, 1, idx) == std::vector<EdgeId>{*lh.graph().find_edge(1, 2)});
        }
    }
    CHECK(seen);
}

TEST_CASE("vertex cover check examples") {
    const Graph g = graph_of(make_path(17));
    const std::vector<VertexId> c{3, 7, 11};
    const auto ok = check_vertex_cover(g, std::span<const VertexId>(c), 8);
    CHECK(ok.ok());
    CHECK(ok.sparsity == 3);

    const std::vector<VertexId> none;
    const auto bad = check_vertex_cover(g, std::span<const VertexId>(none), 8);
    CHECK_FALSE(bad.ok());
    CHECK(std::find(bad.uncovered.begin(), bad.uncovered.end(), std::pair<VertexId, VertexId>{0, 9}) !=
          bad.uncovered.end());

    const auto all = g.vertices();
    const auto full = check_vertex_cover(g, std::span<const VertexId>(all), 2);
    CHECK(full.ok());
    CHECK(full.sparsity == 9);
}

TEST_CASE("build matches the all-pairs reference construction") {
    for (const auto& raw : small_suite()) {
        const Hierarchy h = build_of(raw);
        const auto ref = testing::reference_hierarchy(h.graph());
        REQUIRE(static_cast<int>(ref.size()) == h.top());
        for (int i = 0; i < h.top(); ++i) {
            const Level& level = h.level(i);
            const auto& r = ref[static_cast<std::size_t>(i)];
            std::map<VertexId, std::pair<VertexId, VertexId>> got;
            for (const auto& [v, p] : level.c_prime) got[v] = {p.first, p.second};
            CHECK(got == r.c_prime);
            const auto cover = level.cover();
            CHECK(std::set<VertexId>(cover.begin(), cover.end()) == r.cover);
            std::map<std::pair<VertexId, VertexId>, PerturbedWeight> edges;
            for (auto idx : level.graph.live_indices()) {
                edges[{level.graph.edge(idx).a, level.graph.edge(idx).b}] = level.graph.edge(idx).weight;
            }
            CHECK(edges == r.edges);
        }
    }
}

TEST_CASE("hierarchy invariants on the small suite") {
    for (const auto& raw : small_suite()) {
        const Hierarchy h = build_of(raw);
        const auto report = validate_hierarchy(h);
        for (const auto& f : report.failures) MESSAGE(f);
        CHECK(report.ok());
    }
}

TEST_CASE("builds are deterministic") {
    const auto raw = generate({.kind = GraphKind::road_like, .rows = 200, .seed = 12});
    const Hierarchy a = build_of(raw);
    const Hierarchy b = build_of(raw);
    REQUIRE(a.top() == b.top());
    for (int i = 0; i < a.top(); ++i) {
        CHECK(a.level(i).c_prime == b.level(i).c_prime);
        CHECK(a.level(i).in_cover == b.level(i).in_cover);
        const auto& ga = a.level(i).graph;
        const auto& gb = b.level(i).graph;
        REQUIRE(ga.slot_count() == gb.slot_count());
        for (auto idx : ga.live_indices()) {
            CHECK(ga.edge(idx).a == gb.edge(idx).a);
            CHECK(ga.edge(idx).b == gb.edge(idx).b);
            CHECK(ga.edge(idx).weight == gb.edge(idx).weight);
            CHECK(ga.edge(idx).children == gb.edge(idx).children);
        }
    }
}

TEST_CASE("level cap is enforced") {
    CHECK_THROWS_AS(Hierarchy::build(graph_of(make_path(17)), {.level_cap = 1}), HierarchyError);
}
