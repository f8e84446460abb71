#include <doctest.h>

#include <algorithm>
#include <random>

#include "coordmp/error.hpp"
#include "coordmp/generate.hpp"
#include "coordmp/structure.hpp"
#include "support.hpp"

using namespace coordmp;
using namespace coordmp::testing;

namespace {

Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, static_cast<Vertex>(i));
    return Graph(leaves + 1, e);
}

Graph cycle_graph(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
    return Graph(n, e);
}

// Two K_{1,3}-like hubs joined by a path of `len` edges: hub 0 with leaves 1,2, hub 3
// with leaves 4,5, path 0 - 6 - ... - 3.
Graph dumbbell(std::size_t len) {
    std::vector<Edge> e{{0, 1}, {0, 2}, {3, 4}, {3, 5}};
    Vertex prev = 0;
    Vertex next = 6;
    for (std::size_t i = 1; i < len; ++i) {
        e.emplace_back(prev, next);
        prev = next++;
    }
    e.emplace_back(prev, 3);
    return Graph(static_cast<std::size_t>(next), e);
}

}  // namespace

TEST_CASE("niceness on the small examples") {
    Graph star = star_graph(3);
    auto h = is_nice(star, 0, 1);
    REQUIRE(h);
    CHECK_FALSE(haven_defect(star, *h).has_value());
    CHECK(h->center == 0);
    CHECK(h->c1.size() == 2);
    CHECK(h->c2.size() == 2);
    CHECK(h->c3.size() == 2);

    for (Vertex v = 0; v < 5; ++v) CHECK_FALSE(is_nice(path_graph(5), v, 1));
    CHECK_FALSE(is_nice(star, 1, 1));

    // Six-cycle with a pendant on vertex 0.
    std::vector<Edge> e;
    for (Vertex i = 0; i < 6; ++i) e.emplace_back(i, (i + 1) % 6);
    e.emplace_back(0, 6);
    Graph cyc(7, e);
    auto h2 = is_nice(cyc, 0, 2);
    REQUIRE(h2);
    CHECK_FALSE(haven_defect(cyc, *h2).has_value());
    CHECK(h2->x == 6);
    CHECK_FALSE(is_nice(cycle_graph(5), 0, 2));
}

TEST_CASE("batch niceness") {
    CHECK(nice_vertices(find_all_nice(path_graph(8), 1)).empty());
    CHECK(nice_vertices(find_all_nice(star_graph(3), 1)) == std::vector<Vertex>{0});
    // Star plus a disjoint path.
    Graph u(7, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {4, 5}, {5, 6}});
    CHECK(nice_vertices(find_all_nice(u, 1)) == std::vector<Vertex>{0});
}

TEST_CASE("havens are well formed on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GenParams p;
        p.kind = seed % 2 ? GraphKind::random : GraphKind::random_tree;
        p.n = 6 + seed % 9;
        p.robots = 1;
        p.seed = seed;
        Graph g = generate(p).graph();
        const int k = 1 + static_cast<int>(seed % 2);
        for (const auto& h : find_all_nice(g, k)) {
            if (h) CHECK_FALSE(haven_defect(g, *h).has_value());
        }
    }
}

TEST_CASE("maximal 2-paths") {
    TwoPath tp = two_path_around(path_graph(5), 2);
    CHECK(tp.path == std::vector<Vertex>{1, 2, 3});
    CHECK(std::min(tp.attach_a, tp.attach_b) == 0);
    CHECK(std::max(tp.attach_a, tp.attach_b) == 4);
    CHECK_FALSE(tp.degenerate);

    TwoPath cyc = two_path_around(cycle_graph(5), 0);
    CHECK(cyc.degenerate);
    CHECK(cyc.path.size() == 5);

    CHECK_THROWS_AS(two_path_around(star_graph(3), 0), InputError);
}

TEST_CASE("vertex classification") {
    Graph p30 = path_graph(30);
    CHECK(classify_vertex(p30, 15, 1).type == VertexType::type4);

    Graph star = star_graph(3);
    CHECK(classify_vertex(star, 0, 1).type == VertexType::nice);
    auto t1 = classify_vertex(star, 1, 1);
    CHECK(t1.type == VertexType::type1);
    CHECK(t1.near_nice == 0);
    CHECK(t1.near_distance == 1);

    Graph db = dumbbell(12);
    // Path vertex six steps from either hub.
    const Vertex mid = 6 + 5;
    auto t2 = classify_vertex(db, mid, 1);
    CHECK(t2.type == VertexType::type2);
    CHECK_FALSE(describe(t2).empty());
}

TEST_CASE("classification is total on random graphs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenParams p;
        p.kind = seed % 3 == 0 ? GraphKind::random : GraphKind::random_tree;
        p.n = 8 + seed % 20;
        p.robots = 1;
        p.edge_probability = 0.05;
        p.seed = seed;
        Graph g = generate(p).graph();
        const int k = 1 + static_cast<int>(seed % 3);
        NiceMap nice = find_all_nice(g, k);
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            CHECK_NOTHROW(classify_vertex(g, v, k, nice));
        }
    }
}

TEST_CASE("motion domains") {
    // Small graph: the BFS exhausts it.
    Instance star = star_instance();
    auto d = compute_motion_domain(star, 1, 3);
    if (d) {
        CHECK(d->size() == 4);
    }

    Graph hub = star_graph(30);
    Instance at_leaf = make_instance(31, hub.edges(), {{1, std::nullopt}});
    auto dom = compute_motion_domain(at_leaf, 0, 1);
    REQUIRE(dom);
    // Hub plus c1 + 2 = 3 lowest-id neighbours.
    CHECK(*dom == std::vector<Vertex>{0, 1, 2, 3});

    // Start is nice: the domain covers its haven.
    Graph small = star_graph(3);
    Instance at_hub = make_instance(4, small.edges(), {{0, std::nullopt}});
    auto h = is_nice(small, 0, 1);
    REQUIRE(h);
    auto own = compute_motion_domain(at_hub, 0, 0);
    REQUIRE(own);
    for (Vertex m : h->members) CHECK(std::binary_search(own->begin(), own->end(), m));

    Instance far = make_instance(5, path_graph(5).edges(), {{0, std::nullopt}});
    CHECK_FALSE(compute_motion_domain(far, 0, 3).has_value());
}

TEST_CASE("motion domain contains the start and respects the size bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenParams p;
        p.kind = GraphKind::random;
        p.n = 10;
        p.robots = 2;
        p.free_robots = 1;
        p.seed = seed;
        Instance in = generate(p);
        auto d = compute_motion_domain(in, 1, 3);
        if (!d) continue;
        CHECK(std::binary_search(d->begin(), d->end(), in.robot(1).start));
        CHECK(d->size() <= in.graph().vertex_count());
    }
}
