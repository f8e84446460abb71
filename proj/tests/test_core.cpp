#include <doctest.h>

#include "coordmp/error.hpp"
#include "coordmp/generate.hpp"
#include "coordmp/io.hpp"
#include "support.hpp"

using namespace coordmp;
using namespace coordmp::testing;

TEST_CASE("graph basics") {
    Graph p3 = path_graph(3);
    CHECK(p3.vertex_count() == 3);
    CHECK(p3.has_edge(1, 0));
    CHECK_FALSE(p3.has_edge(0, 2));
    CHECK(shortest_path_distance(p3, 0, 0) == 0);
    CHECK(shortest_path_distance(p3, 0, 2) == 2);
    Graph two(4, std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK_FALSE(shortest_path_distance(two, 0, 3).has_value());
    CHECK_FALSE(is_connected(two));
    CHECK(connected_components(two) == std::vector<int>{0, 0, 1, 1});
    CHECK_THROWS_AS(Graph(2, std::vector<Edge>{{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph(2, std::vector<Edge>{{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(Graph(2, std::vector<Edge>{{0, 2}}), InputError);
    CHECK(shortest_path(p3, 0, 2) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("energy counts moving steps only") {
    CHECK(energy(Schedule::stationary({0, 1}, 4)) == 0);
    CHECK(route_energy({0, 1, 1, 2}) == 2);
    Schedule s({{0, 1, 2, 3}, {7, 6, 5, 4}});
    CHECK(energy(s) == 6);
}

TEST_CASE("validation") {
    Instance in = p3_trivial(2);
    Schedule ok({{0, 1, 2}});
    ValidationResult v = validate_schedule(in, ok);
    CHECK(v.ok());
    CHECK(v.energy == 2);
    CHECK_FALSE(v.over_budget);

    ValidationResult tight = validate_schedule(p3_trivial(1), ok);
    CHECK(tight.ok());
    CHECK(tight.over_budget);

    Instance swap = make_instance(2, {{0, 1}}, {{0, 1}, {1, 0}});
    ValidationResult bad = validate_schedule(swap, Schedule({{0, 1}, {1, 0}}));
    CHECK(bad.violation == Violation::edge_swap_conflict);
    CHECK(bad.step == 1);

    CHECK(validate_schedule(in, Schedule({{0, 2, 2}})).violation == Violation::not_adjacent);
    CHECK(validate_schedule(in, Schedule({{1, 2}})).violation == Violation::wrong_start);
    CHECK(validate_schedule(in, Schedule({{0, 1}})).violation == Violation::wrong_goal);

    // Follow-the-leader is legal.
    Instance follow = make_instance(3, {{0, 1}, {1, 2}}, {{1, 2}, {0, 1}});
    CHECK(validate_schedule(follow, Schedule({{1, 2}, {0, 1}})).ok());
}

TEST_CASE("conflicts are symmetric") {
    Route a{0, 1, 2};
    Route b{2, 1, 0};
    auto ab = conflicts(a, b);
    auto ba = conflicts(b, a);
    REQUIRE(ab.has_value());
    REQUIRE(ba.has_value());
    CHECK(*ab == *ba);
    CHECK(ab->kind == ConflictKind::vertex);
    auto sw = conflicts({0, 1}, {1, 0});
    REQUIRE(sw.has_value());
    CHECK(sw->kind == ConflictKind::edge_swap);
    CHECK_FALSE(conflicts({0, 1}, {1, 2}).has_value());
}

TEST_CASE("uniform waits preserve validity and energy") {
    Instance in = p3_trivial();
    Schedule s({{0, 1, 2}});
    Schedule longer = s;
    longer.push_step(s.positions_at(s.horizon()));
    CHECK(validate_schedule(in, longer).ok());
    CHECK(energy(longer) == energy(s));
}

TEST_CASE("instance format round trip") {
    const std::string canonical = "gcmp 1\nn 4\ne 0 1\ne 1 2\ne 2 3\nr 0 0 3\nr 1 2 -\nbudget 9\n";
    Instance in = parse_instance(canonical);
    CHECK(in.robot_count() == 2);
    CHECK(in.robot(1).is_free());
    CHECK(render_instance(in) == canonical);

    Instance minimal = parse_instance("gcmp 1\nn 1\nr 0 0 -\n");
    CHECK(minimal.robot_count() == 1);

    CHECK_THROWS_AS(parse_instance("gcmp 1\nn 3\ne 0 1\nr 0 0 1\nr 1 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("gcmp 1\nn 2\ne 0 5\n"), ParseError);
    try {
        parse_instance("gcmp 1\nn 2\n\ne 0 1\nbogus\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }

    auto named = parse_instance_with_names("gcmp 1\nn 3\ne a b\ne b c # comment\nr 0 a c\n");
    CHECK(named.vertex_names == std::vector<std::string>{"a", "b", "c"});
    CHECK(named.instance.robot(0).goal == 2);
}

TEST_CASE("schedule format round trip") {
    Instance in = p3_trivial();
    Schedule s = parse_schedule("sched 1 2\nrobot 0: 0 1 2\n", in);
    CHECK(s.route(0) == Route{0, 1, 2});
    CHECK(render_schedule(s) == "sched 1 2\nrobot 0: 0 1 2\n");
    Instance two = make_instance(3, {{0, 1}, {1, 2}}, {{0, 2}, {1, std::nullopt}});
    CHECK_THROWS_AS(parse_schedule("sched 2 2\nrobot 0: 0 1 2\nrobot 1: 1 0\n", two), ParseError);
}

TEST_CASE("distance lower bound") {
    Instance in = make_instance(4, {{0, 1}, {1, 2}, {2, 3}}, {{0, 3}, {1, std::nullopt}});
    CHECK(in.distance_lower_bound() == 3);
    Instance split = make_instance(3, {{0, 1}}, {{0, 2}});
    CHECK_FALSE(split.distance_lower_bound().has_value());
}

TEST_CASE("generator") {
    GenParams p;
    p.kind = GraphKind::path;
    p.n = 3;
    p.robots = 1;
    Instance a = generate(p);
    CHECK(a.graph().vertex_count() == 3);
    CHECK(render_instance(a) == render_instance(generate(p)));

    GenParams grid;
    grid.kind = GraphKind::grid;
    grid.w = 3;
    grid.h = 2;
    grid.robots = 2;
    Instance g = generate(grid);
    CHECK(g.graph().vertex_count() == 6);
    CHECK(g.graph().edge_count() == 7);

    GenParams over;
    over.n = 2;
    over.robots = 3;
    CHECK_THROWS_AS(generate(over), InputError);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GenParams r;
        r.kind = GraphKind::random;
        r.n = 9;
        r.robots = 3;
        r.free_robots = 1;
        r.seed = seed;
        Instance x = generate(r);
        CHECK(is_connected(x.graph()));
        CHECK(x.robot(2).is_free());
        CHECK(render_instance(x) == render_instance(generate(r)));
    }
}

TEST_CASE("isomorphism classes of small connected graphs") {
    auto graphs = connected_graphs(6);
    CHECK(graphs.size() == 143);
}
