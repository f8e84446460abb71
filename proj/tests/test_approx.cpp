#include <doctest.h>

#include <algorithm>

#include "coordmp/approx.hpp"
#include "coordmp/error.hpp"
#include "coordmp/generate.hpp"
#include "support.hpp"

using namespace coordmp;
using namespace coordmp::testing;

namespace {

// Center 0, inner ring 1,2,3, outer tips 4,5,6 (arm i: 0 - i - i+3).
const std::vector<Edge> kSpider{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}};

// Hub 0 with `leaves` leaves 1..leaves, each with its own pendant leaves+i.
std::vector<Edge> pendant_hub(int leaves) {
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) {
        e.emplace_back(0, i);
        e.emplace_back(i, leaves + i);
    }
    return e;
}

}  // namespace

TEST_CASE("single robot is routed directly") {
    Instance p = make_instance(5, path_graph(5).edges(), {{0, 4}});
    ApproxReport r = approximate(p);
    REQUIRE(r.status == ApproxStatus::ok);
    CHECK(r.energy == 4);
    CHECK(r.overhead == 0);
    CHECK(r.lower_bound == 4);
    REQUIRE(r.schedule);
    CHECK(validate_schedule(p, *r.schedule).ok());
}

TEST_CASE("approximation on the grown star") {
    Instance in = make_instance(7, kSpider, {{1, 2}, {0, std::nullopt}});
    auto exact = solve_exact(in);
    REQUIRE(exact.energy);
    ApproxReport r = approximate(in);
    REQUIRE(r.status == ApproxStatus::ok);
    REQUIRE(r.schedule);
    CHECK(validate_schedule(in, *r.schedule).ok());
    CHECK(r.energy >= *exact.energy);
    CHECK(r.energy <= *exact.energy + 2 * 32);
}

TEST_CASE("approximation reports infeasibility") {
    CHECK(approximate(p3_blocking()).status == ApproxStatus::infeasible);
}

TEST_CASE("approximation sandwich on a random corpus") {
    for (const Instance& in : random_corpus(40, 11, 10, 3)) {
        ApproxReport r = approximate(in);
        if (r.status != ApproxStatus::ok) continue;
        auto exact = solve_exact(in);
        if (exact.status != SearchStatus::optimal) continue;
        REQUIRE(r.schedule);
        CHECK(validate_schedule(in, *r.schedule).ok());
        const auto k = static_cast<Energy>(in.robot_count());
        CHECK(r.energy >= *exact.energy);
        CHECK(r.energy <= *exact.energy + 2 * k * k * k * k * k);
    }
}

TEST_CASE("routing through havens") {
    Graph g(7, kSpider);
    NiceMap nice = find_all_nice(g, 2);
    std::vector<Haven> havens = select_havens(nice);
    REQUIRE_FALSE(havens.empty());

    Instance alone = make_instance(7, kSpider, {{4, 5}});
    Schedule s = Schedule::stationary(alone.starts());
    route_through_havens(g, havens, s, 0, {4, 1, 0, 2, 5});
    CHECK(validate_schedule(alone, s).ok());
    CHECK(energy(s) == 4);

    Instance crowded = make_instance(7, kSpider, {{4, 5}, {0, std::nullopt}});
    Schedule c = Schedule::stationary(crowded.starts());
    route_through_havens(g, havens, c, 0, {4, 1, 0, 2, 5});
    CHECK(validate_schedule(crowded, c).ok());
    CHECK(energy(c) <= 4 + 20 * 8);

    // Robot starting inside the haven.
    Instance inner = make_instance(7, kSpider, {{1, 6}, {2, std::nullopt}});
    Schedule d = Schedule::stationary(inner.starts());
    route_through_havens(g, havens, d, 0, {1, 0, 3, 6});
    CHECK(validate_schedule(inner, d).ok());
}

TEST_CASE("gcmp1 agrees with exact search") {
    CHECK(solve_gcmp1(p3_blocking()).status == SearchStatus::infeasible);
    CHECK(solve_gcmp1(star_instance()).energy == 3);
    CHECK_THROWS_AS(solve_gcmp1(make_instance(3, path_graph(3).edges(), {{0, 1}, {2, 2}})), InputError);

    // Free robot beside a large hub.
    Instance hub = make_instance(61, pendant_hub(30), {{1, 2}, {3, std::nullopt}});
    MotionDomainSet d = gcmp1_domains(hub);
    CHECK(d.allowed[1].size() < hub.graph().vertex_count());
    CHECK(std::binary_search(d.allowed[1].begin(), d.allowed[1].end(), 3));
    auto a = solve_gcmp1(hub);
    auto b = solve_exact(hub);
    CHECK(a.status == b.status);
    CHECK(a.energy == b.energy);
}

TEST_CASE("energy ball restriction") {
    Instance p20 = make_instance(20, path_graph(20).edges(), {{5, 7}}, 2);
    BallRestriction b = energy_ball_restrict(p20);
    REQUIRE_FALSE(b.no_instance);
    REQUIRE(b.reduced);
    CHECK(b.reduced->graph().vertex_count() == 5);
    CHECK(solve_within_budget(p20).energy == 2);
    CHECK(solve_within_budget(*b.reduced).energy == 2);

    Instance still = make_instance(3, path_graph(3).edges(), {{0, 0}, {2, std::nullopt}}, 0);
    BallRestriction s = energy_ball_restrict(still);
    REQUIRE_FALSE(s.no_instance);
    REQUIRE(s.reduced);
    CHECK(s.reduced->robot_count() == 0);

    Instance many = make_instance(4, path_graph(4).edges(), {{0, 1}, {2, 3}}, 1);
    CHECK(energy_ball_restrict(many).no_instance);

    CHECK_THROWS_AS(energy_ball_restrict(p3_trivial()), InputError);
}
