#include <random>

#include "doctest.h"
#include "fuzz.hpp"
#include "helpers.hpp"
#include "hdr/dynamic.hpp"
#include "hdr/query.hpp"
#include "hdr/validate.hpp"

using namespace hdr;
using testing::build_of;
using testing::c_prime_ids;

namespace {

void require_valid(const Hierarchy& h) {
    const auto report = validate_hierarchy(h, false);
    for (const auto& f : report.failures) MESSAGE(f);
    REQUIRE(report.ok());
}

bool same_structure(const Hierarchy& a, const Hierarchy& b) {
    if (a.top() != b.top()) return false;
    for (int i = 0; i < a.top(); ++i) {
        const Level& x = a.level(i);
        const Level& y = b.level(i);
        if (x.c_prime != y.c_prime || x.long_edges != y.long_edges || x.cover() != y.cover()) return false;
        if (x.graph.live_indices() != y.graph.live_indices()) return false;
        for (auto idx : x.graph.live_indices()) {
            const auto& e = x.graph.edge(idx);
            const auto& f = y.graph.edge(idx);
            if (e.a != f.a || e.b != f.b || e.weight != f.weight || e.children != f.children) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("classification of the 17-path tail delete") {
    const Hierarchy h = build_of(make_path(17));
    const VertexId ends[] = {15, 16};
    const auto c = classify(h, 1, ends);
    CHECK(c.region.size() == 17);
    CHECK(c.c_init.empty());
    for (VertexId x : {3u, 7u, 11u}) CHECK(c.colors.at(x) == PathColor::blue);
}

TEST_CASE("far updates leave C_init whole") {
    const Hierarchy h = build_of(make_path(200));
    const VertexId ends[] = {198, 199};
    const auto c = classify(h, 1, ends);
    std::size_t far = 0;
    for (const auto& [x, color] : c.colors) {
        if (x + 3 * 8 < 198) {
            ++far;
            CHECK(color == PathColor::red);
        }
    }
    CHECK(far > 10);
    // A new-vertex insert only looks around the endpoint that exists.
    const VertexId grow[] = {0, 500};
    const auto g = classify(h, 1, grow);
    CHECK(g.region.front() == 0);
    CHECK(g.region.back() == 16);
}

TEST_CASE("17-path: delete the last edge") {
    Hierarchy h = build_of(make_path(17));
    const auto stats = apply_update(h, {UpdateKind::remove, 15, 16, 0});
    CHECK_FALSE(h.graph().has_vertex(16));
    CHECK(h.graph().vertex_count() == 16);
    REQUIRE(h.top() == 2);
    CHECK(c_prime_ids(h.level(1)) == std::vector<VertexId>{3, 7, 11});
    CHECK(stats.levels.at(1).blue == 3);
    require_valid(h);
}

TEST_CASE("17-path: insert a chord") {
    Hierarchy h = build_of(make_path(17));
    apply_update(h, {UpdateKind::insert, 0, 16, 2});
    const EdgeId id = *h.graph().find_edge(0, 16);
    CHECK(edge_level(h.graph().edge(id).weight.base) == 1);
    CHECK(std::find(h.level(1).long_edges.begin(), h.level(1).long_edges.end(), id) != h.level(1).long_edges.end());
    CHECK(h.level(1).covers(0));
    CHECK(h.level(1).covers(16));
    const auto oracle = dijkstra_full(h.graph(), 8);
    CHECK(query_distance(h, 8, 0) == oracle.dist(0));
    CHECK(query_distance(h, 8, 0).base == 8);
    CHECK(query_distance(h, 2, 14).base == 6);
    require_valid(h);
}

TEST_CASE("reweight to the same value changes nothing") {
    Hierarchy h = build_of(make_grid(6, 6, WeightKind::uniform, 2));
    const Hierarchy before = h;
    const Edge e = h.graph().edge(h.graph().edge_ids()[7]);
    const auto stats = apply_update(h, {UpdateKind::reweight, e.u, e.v, e.weight.base});
    CHECK(stats.noop);
    CHECK(same_structure(before, h));
}

TEST_CASE("rejected updates leave the structure alone") {
    Hierarchy h = build_of(make_path(17));
    const Hierarchy before = h;
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::remove, 7, 8, 0}), UpdateError);
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::insert, 40, 41, 1}), UpdateError);
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::insert, 3, 3, 1}), UpdateError);
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::insert, 0, 5, 0}), UpdateError);
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::insert, 0, 5, 9}), UpdateError);  // 9 > d(0,5)
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::insert, 0, 1, 1}), UpdateError);  // exists
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::remove, 0, 5, 0}), UpdateError);
    CHECK_THROWS_AS(apply_update(h, {UpdateKind::reweight, 0, 9, 3}), UpdateError);
    CHECK(same_structure(before, h));
    CHECK(h.graph().edge_capacity() == before.graph().edge_capacity());

    // An insert that undercuts an existing edge.
    Hierarchy t = build_of({{0, 1, 10}, {1, 2, 10}, {0, 3, 1}, {3, 4, 1}});
    CHECK_NOTHROW(apply_update(t, {UpdateKind::insert, 4, 1, 12}));
    CHECK_THROWS_AS(apply_update(t, {UpdateKind::insert, 2, 4, 1}), UpdateError);
    // Raising a weight above a detour.
    Hierarchy c = build_of(make_grid(3, 3));
    CHECK_THROWS_AS(apply_update(c, {UpdateKind::reweight, 0, 1, 5}), UpdateError);
    // Lowering a weight so another edge is beaten.
    Hierarchy d = build_of({{0, 1, 3}, {1, 2, 3}, {0, 2, 5}});
    CHECK_THROWS_AS(apply_update(d, {UpdateKind::reweight, 0, 1, 1}), UpdateError);
    CHECK_NOTHROW(apply_update(d, {UpdateKind::reweight, 0, 1, 2}));
    require_valid(d);
}

TEST_CASE("delete then re-insert restores all distances") {
    Hierarchy h = build_of(generate({.kind = GraphKind::road_like, .rows = 150, .seed = 4}));
    const AllPairs before(h.graph());
    const auto vs = h.graph().vertices();
    std::mt19937_64 rng(1);
    int done = 0;
    for (int attempt = 0; attempt < 50 && done < 5; ++attempt) {
        const Edge e = h.graph().edge(h.graph().edge_ids()[rng() % h.graph().edge_count()]);
        try {
            apply_update(h, {UpdateKind::remove, e.u, e.v, 0});
        } catch (const UpdateError&) {
            continue;
        }
        apply_update(h, {UpdateKind::insert, e.u, e.v, e.weight.base});
        ++done;
    }
    CHECK(done == 5);
    for (int k = 0; k < 300; ++k) {
        const VertexId s = vs[rng() % vs.size()], t = vs[rng() % vs.size()];
        CHECK(query_distance(h, s, t) == before.dist(s, t));
    }
    require_valid(h);
}

TEST_CASE("vertex growth and removal") {
    Hierarchy h = build_of(make_path(17));
    apply_update(h, {UpdateKind::insert, 16, 17, 1});
    apply_update(h, {UpdateKind::insert, 17, 18, 3});
    CHECK(h.graph().vertex_count() == 19);
    CHECK(query_distance(h, 0, 18).base == 20);
    require_valid(h);
    apply_update(h, {UpdateKind::remove, 17, 18, 0});
    apply_update(h, {UpdateKind::remove, 16, 17, 0});
    CHECK(h.graph().vertex_count() == 17);
    CHECK(c_prime_ids(h.level(1)) == std::vector<VertexId>{3, 7, 11});
    require_valid(h);
}

TEST_CASE("updates can raise and lower the top") {
    Hierarchy h = build_of(make_path(17));
    CHECK(h.top() == 2);
    apply_update(h, {UpdateKind::insert, 16, 17, 100});
    CHECK(h.top() == 4);
    require_valid(h);
    apply_update(h, {UpdateKind::remove, 16, 17, 0});
    CHECK(h.top() == 2);
    require_valid(h);
}

TEST_CASE("random update streams keep every invariant") {
    struct Case {
        std::vector<RawEdge> raw;
        int ops;
    };
    const Case cases[] = {
        {make_grid(9, 9), 60},
        {make_grid(8, 8, WeightKind::uniform, 5), 60},
        {generate({.kind = GraphKind::road_like, .rows = 120, .seed = 2}), 60},
        {generate({.kind = GraphKind::road_like, .rows = 90, .weights = WeightKind::geometric, .seed = 3}), 40},
    };
    std::mt19937_64 rng(99);
    for (const Case& c : cases) {
        Hierarchy h = build_of(c.raw);
        int applied = 0;
        for (int attempt = 0; applied < c.ops && attempt < 20 * c.ops; ++attempt) {
            const auto req = testing::propose_update(h.graph(), rng);
            const auto pairs = testing::sample_pairs(h.graph(), 60, rng);
            Hierarchy before = h;
            const auto report = update_and_verify(h, req, pairs);
            if (!report.failures.empty() && report.failures.front().rfind("rejected", 0) == 0) {
                CHECK(same_structure(before, h));
                continue;
            }
            ++applied;
            for (const auto& f : report.failures) MESSAGE(f);
            REQUIRE(report.ok());
        }
        CHECK(applied == c.ops);
    }
}

TEST_CASE("C' stays fixed beyond 3*8^i of the update") {
    std::mt19937_64 rng(5);
    Hierarchy h = build_of(make_grid(30, 30));
    for (int k = 0; k < 25; ++k) {
        const auto req = testing::propose_update(h.graph(), rng);
        const Hierarchy before = h;
        try {
            apply_update(h, req);
        } catch (const UpdateError&) {
            continue;
        }
        std::vector<VertexId> ends;
        for (VertexId x : {req.u, req.v}) {
            if (before.graph().has_vertex(x) && h.graph().has_vertex(x)) ends.push_back(x);
        }
        const auto tree_src = ends;
        for (int i = 1; i < std::min(before.top(), h.top()); ++i) {
            const Base r = 3 * pow8(i);
            std::vector<Seed> seeds;
            for (VertexId x : tree_src) seeds.emplace_back(x, PerturbedWeight::zero());
            const auto near = dijkstra_bounded(h.graph(), seeds, PerturbedWeight::radius(r));
            const auto& a = before.level(i).c_prime;
            const auto& b = h.level(i).c_prime;
            for (const auto& [x, p] : a) {
                if (!near.reached(x)) CHECK(b.contains(x));
            }
            for (const auto& [x, p] : b) {
                if (!near.reached(x)) CHECK(a.contains(x));
            }
        }
    }
}
