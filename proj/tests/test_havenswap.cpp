#include <doctest.h>

#include <algorithm>
#include <random>

#include "coordmp/error.hpp"
#include "coordmp/havenswap.hpp"
#include "coordmp/structure.hpp"
#include "support.hpp"

using namespace coordmp;
using namespace coordmp::testing;

namespace {

Graph star3() { return Graph(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}); }

std::size_t crossings_into(const Route& r, const Haven& h) {
    std::size_t n = 0;
    for (std::size_t j = 0; j + 1 < r.size(); ++j) n += !h.contains(r[j]) && h.contains(r[j + 1]);
    return n;
}

std::size_t outside_moves(const Schedule& s, const Haven& h) {
    std::size_t n = 0;
    for (const Route& r : s.routes()) {
        for (std::size_t j = 0; j + 1 < r.size(); ++j) {
            n += r[j] != r[j + 1] && !h.contains(r[j]) && !h.contains(r[j + 1]);
        }
    }
    return n;
}

}  // namespace

TEST_CASE("identity swap is empty") {
    Graph g = star3();
    auto h = is_nice(g, 0, 1);
    REQUIRE(h);
    HavenConfiguration c{{{0, 1}}};
    CHECK(haven_swap(g, *h, c, c).empty());
}

TEST_CASE("single robot across a star haven") {
    Graph g = star3();
    auto h = is_nice(g, 0, 1);
    REQUIRE(h);
    HavenConfiguration from{{{0, h->c1.back()}}};
    HavenConfiguration to{{{0, h->c2.back()}}};
    MoveSequence m = haven_swap(g, *h, from, to);
    CHECK(m.size() == 2);
    CHECK(apply_moves(g, &*h, from, m) == to);
}

TEST_CASE("mismatched configurations are rejected") {
    Graph g = star3();
    auto h = is_nice(g, 0, 1);
    REQUIRE(h);
    CHECK_THROWS_AS(haven_swap(g, *h, HavenConfiguration{{{0, 1}}}, HavenConfiguration{{{1, 2}}}), InputError);
    Haven broken = *h;
    broken.c1.clear();
    CHECK_THROWS_AS(haven_swap(g, broken, HavenConfiguration{{{0, 1}}}, HavenConfiguration{{{0, 2}}}),
                    InputError);
}

TEST_CASE("replay rejects illegal moves") {
    Graph g = star3();
    HavenConfiguration c{{{0, 1}, {1, 0}}};
    MoveSequence bad{{0, 1, 0}};
    CHECK_THROWS_AS(apply_moves(g, nullptr, c, bad), InputError);
    MoveSequence jump{{0, 1, 2}};
    CHECK_THROWS_AS(apply_moves(g, nullptr, c, jump), InputError);
}

TEST_CASE("backtrack cancellation") {
    MoveSequence m{{0, 1, 0}, {0, 0, 1}, {1, 2, 3}};
    CHECK(cancel_backtracks(m) == MoveSequence{{1, 2, 3}});
    MoveSequence keep{{0, 1, 0}, {1, 2, 0}, {0, 0, 1}};
    CHECK(cancel_backtracks(keep).size() == 3);
}

TEST_CASE("random permutations inside a k = 3 haven") {
    // Vertex 0 with three arms of length 4; arm 3 doubles as x.
    std::vector<Edge> e;
    Vertex next = 1;
    for (int arm = 0; arm < 3; ++arm) {
        Vertex prev = 0;
        for (int i = 0; i < 4; ++i) {
            e.emplace_back(prev, next);
            prev = next++;
        }
    }
    Graph g(static_cast<std::size_t>(next), e);
    auto h = is_nice(g, 0, 3);
    REQUIRE(h);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Vertex> cells = h->members;
        std::shuffle(cells.begin(), cells.end(), rng);
        HavenConfiguration from;
        HavenConfiguration to;
        for (RobotId r = 0; r < 3; ++r) from.placement[r] = cells[static_cast<std::size_t>(r)];
        std::shuffle(cells.begin(), cells.end(), rng);
        for (RobotId r = 0; r < 3; ++r) to.placement[r] = cells[static_cast<std::size_t>(r)];
        MoveSequence m = haven_swap(g, *h, from, to);
        CHECK(apply_moves(g, &*h, from, m) == to);
        CHECK(m.size() <= 20 * 27);
    }
}

TEST_CASE("normalization around a haven") {
    // Star on 0 with leaves 1,2,3 and a tail 3-4-5.
    Graph g(6, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}});
    auto h = is_nice(g, 0, 1);
    REQUIRE(h);
    REQUIRE(h->contains(3));
    REQUIRE_FALSE(h->contains(4));

    Instance away = make_instance(6, g.edges(), {{4, 5}});
    Schedule s({{4, 5}});
    CHECK(normalize_around_haven(away, s, *h) == s);

    Instance loiter = make_instance(6, g.edges(), {{5, 5}});
    Schedule twice({{5, 4, 3, 4, 5, 4, 3, 4, 5}});
    REQUIRE(crossings_into(twice.route(0), *h) == 2);
    Schedule n = normalize_around_haven(loiter, twice, *h);
    CHECK(validate_schedule(loiter, n).ok());
    CHECK(crossings_into(n.route(0), *h) <= 1);
    CHECK(outside_moves(n, *h) <= outside_moves(twice, *h));

    // Entirely inside: only the final rearrangement remains.
    Instance inside = make_instance(6, g.edges(), {{1, 2}});
    Schedule walk({{1, 0, 3, 0, 1, 0, 2}});
    Schedule tidy = normalize_around_haven(inside, walk, *h);
    CHECK(validate_schedule(inside, tidy).ok());
    CHECK(energy(tidy) <= 1 * 20);

    CHECK_THROWS_AS(normalize_around_haven(inside, Schedule({{1, 2}}), *h), InputError);
}
