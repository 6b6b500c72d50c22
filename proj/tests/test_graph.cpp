#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "hdr/dijkstra.hpp"

using namespace hdr;
using testing::graph_of;

TEST_CASE("perturbed weights order lexicographically") {
    const PerturbedWeight a{1, 5}, b{1, 6}, c{2, 0};
    CHECK(a < b);
    CHECK(b < c);
    CHECK(a + b == PerturbedWeight{2, 11});
    CHECK(PerturbedWeight::zero() < a);
    CHECK(c < PerturbedWeight::infinity());
    CHECK(PerturbedWeight{3, 999} <= PerturbedWeight::radius(3));
    CHECK(PerturbedWeight::radius(3) < PerturbedWeight{4, 0});
}

TEST_CASE("addition is associative, commutative and monotone") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        auto pick = [&] { return PerturbedWeight{rng() % 1000, rng() & kTiebreakMask}; };
        const auto x = pick(), y = pick(), z = pick();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x + y == y + x);
        if (x < y) CHECK(x + z < y + z);
        CHECK((x < y) + (y < x) + (x == y) == 1);
    }
}

TEST_CASE("edge levels follow powers of eight") {
    CHECK(edge_level(1) == 0);
    CHECK(edge_level(2) == 1);
    CHECK(edge_level(8) == 1);
    CHECK(edge_level(9) == 2);
    CHECK(edge_level(64) == 2);
    CHECK(edge_level(65) == 3);
    CHECK(edge_level(100) == 3);
    CHECK(pow8(0) == 1);
    CHECK(pow8(2) == 64);
    CHECK(pow8(-1) == 0);
}

TEST_CASE("tiebreaks depend on the unordered pair and the seed") {
    CHECK(edge_tiebreak(3, 9, 1) == edge_tiebreak(9, 3, 1));
    CHECK(edge_tiebreak(3, 9, 1) != edge_tiebreak(3, 9, 2));
    CHECK(edge_tiebreak(3, 9, 1) <= kTiebreakMask);
}

TEST_CASE("raw weights parse as exact decimals") {
    CHECK(RawWeight::parse("12") == RawWeight{12, 0});
    CHECK(RawWeight::parse("0.25") == RawWeight{25, 2});
    CHECK(RawWeight::parse("3.0") == RawWeight{3, 0});
    CHECK(RawWeight::parse(".5") == RawWeight{5, 1});
    CHECK_THROWS_AS(RawWeight::parse("-1"), GraphError);
    CHECK_THROWS_AS(RawWeight::parse("1e3"), GraphError);
    CHECK_THROWS_AS(RawWeight::parse(""), GraphError);
    CHECK_THROWS_AS(RawWeight::parse("."), GraphError);
    CHECK(unscale(125, 100) == "1.25");
    CHECK(unscale(300, 100) == "3");
    CHECK(unscale(16, 1) == "16");
}

TEST_CASE("ingest drops the long side of a 3-cycle") {
    const auto r = hdr::ingest(std::vector<RawEdge>{{0, 1, 1}, {1, 2, 1}, {0, 2, 5}});
    CHECK(r.dropped_non_useful == 1);
    CHECK(r.graph.edge_count() == 2);
    CHECK_FALSE(r.graph.find_edge(0, 2).has_value());
}

TEST_CASE("ingest single edge and path") {
    const auto one = graph_of({{0, 1, 1}});
    CHECK(one.edge_count() == 1);
    CHECK(one.max_base_weight() == 1);
    const auto path = graph_of(make_path(17));
    CHECK(path.edge_count() == 16);
    CHECK(path.vertex_count() == 17);
    CHECK(path.max_base_weight() == 1);
}

TEST_CASE("ingest scaling and rejections") {
    const auto r = hdr::ingest(std::vector<RawEdge>{{0, 1, RawWeight::parse("0.5")}, {1, 2, RawWeight::parse("1.25")}});
    CHECK(r.graph.scale() == 100);
    CHECK(r.graph.edge(*r.graph.find_edge(0, 1)).weight.base == 50);
    CHECK(r.graph.edge(*r.graph.find_edge(1, 2)).weight.base == 125);

    const auto dup = hdr::ingest(std::vector<RawEdge>{{0, 1, 2}, {1, 0, 2}});
    CHECK(dup.merged_duplicates == 1);
    CHECK(dup.graph.edge_count() == 1);

    CHECK_THROWS_AS(hdr::ingest(std::vector<RawEdge>{{0, 1, 2}, {1, 0, 3}}), GraphError);
    CHECK_THROWS_AS(hdr::ingest(std::vector<RawEdge>{{0, 0, 2}}), GraphError);
    CHECK_THROWS_AS(hdr::ingest(std::vector<RawEdge>{{0, 1, 0}}), GraphError);
    CHECK_THROWS_AS(hdr::ingest(std::vector<RawEdge>{{0, 1, 1}, {2, 3, 1}}), GraphError);
}

TEST_CASE("dijkstra examples") {
    const auto g = graph_of(make_path(17));
    const auto tree = dijkstra_full(g, 0);
    CHECK(tree.dist(0) == PerturbedWeight::zero());
    CHECK(tree.dist(16).base == 16);
    CHECK_THROWS_AS(dijkstra_full(g, 40), GraphError);

    const auto b = ball(g, 8, PerturbedWeight::radius(2));
    CHECK(b == std::vector<VertexId>{6, 7, 8, 9, 10});
    const Seed seeds[] = {{0, PerturbedWeight::zero()}, {16, PerturbedWeight::zero()}};
    const auto two = dijkstra_bounded(g, seeds, PerturbedWeight::radius(3));
    CHECK(two.settled().size() == 8);
    CHECK_FALSE(two.reached(8));
}

TEST_CASE("bounded search agrees with the full search and balls nest") {
    const auto g = graph_of(make_grid(9, 9, WeightKind::uniform, 3));
    for (VertexId s : {0u, 40u, 80u}) {
        const auto full = dijkstra_full(g, s);
        const Seed seed{s, PerturbedWeight::zero()};
        const auto inf = dijkstra_bounded(g, std::span<const Seed>(&seed, 1), PerturbedWeight::infinity());
        for (VertexId v : inf.settled()) CHECK(inf.dist(v) == full.dist(v));
        std::vector<VertexId> prev;
        for (Base r : {0, 3, 10, 25, 60, 200}) {
            const auto cur = ball(g, s, PerturbedWeight::radius(r));
            CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            for (VertexId v : cur) CHECK(full.dist(v).base <= r);
            prev = cur;
        }
    }
}

TEST_CASE("every ingested edge is its own shortest path") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto g = graph_of(generate({.kind = GraphKind::road_like, .rows = 120, .seed = seed}));
        for (EdgeId id : g.edge_ids()) {
            const Edge& e = g.edge(id);
            CHECK(shortest_path(g, e.u, e.v).total == e.weight);
        }
    }
}

TEST_CASE("subpaths of shortest paths are shortest paths") {
    const auto g = graph_of(make_grid(7, 7, WeightKind::uniform, 11));
    for (VertexId s : {0u, 24u}) {
        for (VertexId t : {48u, 6u, 42u}) {
            const auto p = shortest_path(g, s, t);
            for (std::size_t i = 0; i < p.vertices.size(); ++i) {
                for (std::size_t j = i + 1; j < p.vertices.size(); ++j) {
                    const auto q = shortest_path(g, p.vertices[i], p.vertices[j]);
                    CHECK(std::equal(q.vertices.begin(), q.vertices.end(), p.vertices.begin() + i));
                }
            }
        }
    }
}

TEST_CASE("shortest paths are unique under the tiebreak") {
    // A unit 4-cycle has two equal paths between opposite corners before
    // perturbation.
    const auto g = graph_of({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
    CHECK(verify_unique_shortest_paths(g).ok());
    CHECK(verify_unique_shortest_paths(graph_of(make_grid(8, 8))).ok());

    // Zero tiebreaks expose the tie.
    Graph flat;
    flat.restore_edge(0, 0, 1, {1, 0});
    flat.restore_edge(1, 1, 2, {1, 0});
    flat.restore_edge(2, 2, 3, {1, 0});
    flat.restore_edge(3, 3, 0, {1, 0});
    const auto report = verify_unique_shortest_paths(flat);
    CHECK_FALSE(report.ok());
}

TEST_CASE("path results are consistent") {
    const auto g = graph_of(make_grid(6, 6, WeightKind::geometric, 5));
    const auto p = shortest_path(g, 0, 35);
    PerturbedWeight sum, mx;
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
        const Edge& e = g.edge(p.edges[k]);
        CHECK(((e.u == p.vertices[k] && e.v == p.vertices[k + 1]) || (e.v == p.vertices[k] && e.u == p.vertices[k + 1])));
        sum += e.weight;
        mx = std::max(mx, e.weight);
    }
    CHECK(sum == p.total);
    CHECK(mx == p.maxedge);
}

TEST_CASE("generators") {
    const auto grid = make_grid(10, 10);
    CHECK(grid.size() == 180);
    const GenOptions road{.kind = GraphKind::road_like, .rows = 2000, .seed = 9};
    const auto a = generate(road);
    const auto b = generate(road);
    CHECK(a.size() == b.size());
    CHECK(std::equal(a.begin(), a.end(), b.begin(), [](const RawEdge& x, const RawEdge& y) {
        return x.u == y.u && x.v == y.v && x.weight == y.weight;
    }));
    const auto g = graph_of(a);
    CHECK(g.is_connected());
    CHECK(g.vertex_count() == 2000);
    for (const RawEdge& e : a) CHECK(e.weight.mantissa >= 1);
    const auto star = graph_of(generate({.kind = GraphKind::star, .rows = 9}));
    CHECK(star.edge_count() == 8);
}
