#include <doctest.h>

#include <algorithm>

#include "coordmp/error.hpp"
#include "coordmp/hardness.hpp"
#include "coordmp/oracle.hpp"

using namespace coordmp;

namespace {

MulticoloredGraph single_edge() { return {{{"a"}, {"b"}}, {{"a", "b"}}}; }

MulticoloredGraph triangle() { return {{{"a"}, {"b"}, {"c"}}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}}; }

}  // namespace

TEST_CASE("file format") {
    MulticoloredGraph m = parse_mcc("mcc 1\npart 1 a x\npart 2 b\nedge a b # note\n");
    CHECK(m.kappa() == 2);
    CHECK(m.parts[0] == std::vector<std::string>{"a", "x"});
    CHECK(parse_mcc(render_mcc(m)).edges == m.edges);
    CHECK_THROWS_AS(parse_mcc("mcc 1\npart 1 a\npart 2 a\n"), InputError);
    CHECK_THROWS_AS(parse_mcc("mcc 1\npart 1 a b\nedge a b\n"), InputError);
    CHECK_THROWS_AS(parse_mcc("mcc 1\npart 1 a\nedge a q\n"), InputError);
    CHECK_THROWS_AS(parse_mcc("mcc 2\n"), ParseError);
}

TEST_CASE("single-edge reduction") {
    McReduction r = reduce_mcc(single_edge());
    CHECK(r.instance.graph().vertex_count() == 14);
    CHECK(r.instance.robot_count() == 3);
    CHECK(r.instance.budget() == 15);
    CHECK(r.subdivision == 8);
    CHECK_FALSE(r.experimental);
    CHECK(r.names.front() == "a");
    CHECK(std::count(r.names.begin(), r.names.end(), "sub:0:1") == 1);
    CHECK(std::count(r.names.begin(), r.names.end(), "pend:b") == 1);
    CHECK(r.names[r.names.size() - 2] == "s:1:2");
    CHECK(r.names.back() == "t:1:2");

    Schedule w = witness_schedule(single_edge(), {"a", "b"});
    auto v = validate_schedule(r.instance, w);
    CHECK(v.ok());
    CHECK(v.energy == 15);
    CHECK_FALSE(v.over_budget);
}

TEST_CASE("no edges means no route") {
    MulticoloredGraph none{{{"a"}, {"b"}}, {}};
    McReduction r = reduce_mcc(none);
    CHECK(check_feasible(r.instance).status == Feasibility::infeasible);
    CHECK_THROWS_AS(witness_schedule(none, {"a", "b"}), InputError);
}

TEST_CASE("robot count formula") {
    MulticoloredGraph m{{{"a", "x"}, {"b"}, {"c", "y", "z"}}, {{"a", "b"}}};
    McReduction r = reduce_mcc(m, 2);
    CHECK(r.instance.robot_count() == 6 + 3);
    CHECK(r.experimental);
    CHECK(r.instance.budget() == reduction_budget(3, 2));
    CHECK(reduction_budget(3, 2) == 6 + 3 * 5);
    CHECK_THROWS_AS(reduce_mcc(m, 0), InputError);
}

TEST_CASE("triangle witness at the default subdivision") {
    McReduction r = reduce_mcc(triangle());
    CHECK(r.subdivision == 27);
    CHECK(r.instance.budget() == 96);
    auto v = validate_schedule(r.instance, witness_schedule(triangle(), {"a", "b", "c"}));
    CHECK(v.ok());
    CHECK(v.energy == 96);
}

TEST_CASE("clique search") {
    CHECK(find_multicolored_clique(triangle()) == std::vector<std::string>{"a", "b", "c"});
    MulticoloredGraph path{{{"a"}, {"b"}, {"c"}}, {{"a", "b"}, {"b", "c"}}};
    CHECK_FALSE(find_multicolored_clique(path).has_value());
    CHECK_THROWS_AS(witness_schedule(path, {"a", "b", "c"}), InputError);
}

TEST_CASE("round trip on the single edge") {
    McReduction r = reduce_mcc(single_edge());
    auto res = solve_within_budget(r.instance);
    REQUIRE(res.status == SearchStatus::optimal);
    CHECK(res.energy == 15);
    REQUIRE(res.schedule);
    // Exactly one blocking robot moves in each part.
    for (RobotId b : {0, 1}) CHECK(route_energy(res.schedule->route(b)) > 0);
}
