#include <doctest.h>

#include <algorithm>

#include "coordmp/error.hpp"
#include "coordmp/generate.hpp"
#include "coordmp/twdp.hpp"
#include "support.hpp"

using namespace coordmp;
using namespace coordmp::testing;

namespace {

constexpr Vertex U = kUp;
constexpr Vertex D = kDown;

CheckpointSequence chain(std::vector<ConfigTuple> tuples) {
    CheckpointSequence seq;
    for (std::size_t i = 0; i + 1 < tuples.size(); ++i) seq.emplace_back(tuples[i], tuples[i + 1]);
    return seq;
}

// Star centred on 1 with leaves 0, 2, 3; robot 0 goes 0 -> 2, robot 1 is free on 3.
struct Fixture {
    Graph g{4, std::vector<Edge>{{0, 1}, {1, 2}, {1, 3}}};
    Instance in = make_instance(4, g.edges(), {{0, 2}, {3, std::nullopt}});
    std::vector<Vertex> bag{0, 1, 2, 3};

    std::vector<int> violated(const CheckpointSequence& s) const { return check_goodness(s, bag, g, in).violated; }
    bool good(const CheckpointSequence& s) const { return is_good_sequence(s, bag, g, in); }
};

}  // namespace

TEST_CASE("nice decomposition of P3") {
    Graph p3 = path_graph(3);
    NiceTreeDecomposition td = build_nice_td(p3, {0, 2});
    CHECK_FALSE(nice_td_defect(p3, td).has_value());
    CHECK(td.width() <= 2);
    for (const TdNode& node : td.nodes) {
        CHECK(std::binary_search(node.bag.begin(), node.bag.end(), 0));
        CHECK(std::binary_search(node.bag.begin(), node.bag.end(), 2));
    }
}

TEST_CASE("trees have base width 1") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GenParams p;
        p.kind = GraphKind::random_tree;
        p.n = 10;
        p.robots = 1;
        p.seed = seed;
        Instance in = generate(p);
        NiceTreeDecomposition td = build_nice_td(in.graph(), {});
        CHECK(td.base_width == 1);
        CHECK_FALSE(nice_td_defect(in.graph(), td).has_value());
    }
    CHECK(exact_treewidth(Graph(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}})).first == 2);
}

TEST_CASE("decomposition files") {
    Graph p3 = path_graph(3);
    NiceTreeDecomposition td = parse_td("td 1\nnode 0 bag 0 1\nnode 1 bag 1 2\nedge 0 1\n", p3, {0});
    CHECK_FALSE(nice_td_defect(p3, td).has_value());
    CHECK(td.base_width == 1);

    NiceTreeDecomposition again = parse_td(render_td(td), p3, {0});
    CHECK(render_td(again) == render_td(td));

    // Edge {1,2} is not covered.
    CHECK_THROWS_AS(parse_td("td 1\nnode 0 bag 0 1\nnode 1 bag 2\nedge 0 1\n", p3, {}), InputError);
    TreeDecomposition plain{{{0, 1}, {2}}, {{0, 1}}};
    CHECK(td_defect(p3, plain).has_value());

    CHECK_THROWS_AS(build_nice_td(Graph(30, std::vector<Edge>{}), {}, 10), LimitError);
}

TEST_CASE("goodness on hand-built sequences") {
    Graph p2 = path_graph(2);
    Instance still = make_instance(2, p2.edges(), {{0, 0}});
    CHECK(is_good_sequence(chain({{0}, {D}, {0}}), {0}, p2, still));
    CHECK_FALSE(is_good_sequence(chain({{0}, {U}, {D}, {0}}), {0}, p2, still));

    Fixture f;
    CHECK(f.good(chain({{0, 3}, {1, 3}, {2, 3}})));
}

TEST_CASE("goodness mutations") {
    Fixture f;
    SUBCASE("1") {
        CHECK(f.violated(chain({{1, 3}, {2, 3}})) == std::vector<int>{1});
        CHECK(f.violated(chain({{0, 3}, {1, 3}})) == std::vector<int>{1});
        CHECK(f.good(chain({{0, 3}, {1, 3}, {2, 3}})));
    }
    SUBCASE("2") {
        CHECK(f.violated({}) == std::vector<int>{2});
    }
    SUBCASE("4") {
        CHECK(f.violated(chain({{0, 3}, {0, 3}, {1, 3}, {2, 3}})) == std::vector<int>{4});
    }
    SUBCASE("5") {
        CHECK(f.violated(chain({{0, 3}, {0, U}, {1, D}, {2, D}})) == std::vector<int>{5});
        CHECK(f.good(chain({{0, 3}, {0, U}, {1, U}, {2, U}})));
    }
    SUBCASE("6") {
        CHECK(f.violated(chain({{0, 3}, {0, U}, {1, 1}, {2, 1}})) == std::vector<int>{6});
        CHECK(f.good(chain({{0, 3}, {0, U}, {1, 3}, {2, 3}})));
    }
    SUBCASE("7") {
        auto v = f.violated(chain({{0, 3}, {0, U}, {0, 0}, {1, 0}, {2, 0}}));
        CHECK(std::find(v.begin(), v.end(), 7) != v.end());
        CHECK(f.good(chain({{0, 3}, {0, U}, {0, 3}, {1, 3}, {2, 3}})));
    }
    SUBCASE("8") {
        CHECK(f.violated(chain({{0, 3}, {2, 3}})) == std::vector<int>{8});
        Instance swap = make_instance(4, f.g.edges(), {{0, 1}, {1, 0}});
        CHECK(check_goodness(chain({{0, 1}, {1, 0}}), f.bag, f.g, swap).violated == std::vector<int>{8});
    }
    SUBCASE("unreadable entries") {
        CHECK(f.violated(chain({{0, 3}, {0, 7}})) == std::vector<int>{6});
    }
}

TEST_CASE("chains") {
    Chain c{2, {0, 3, 1, 3, 2, 3}};
    CHECK(c.length() == 3);
    CHECK(c.tuple(1) == ConfigTuple{1, 3});
    CHECK(c.pairs() == chain({{0, 3}, {1, 3}, {2, 3}}));
    CHECK(ChainHash{}(c) == ChainHash{}(Chain{2, {0, 3, 1, 3, 2, 3}}));
}

TEST_CASE("dp tables") {
    // A robot that never needs to move: the one-tuple chain costs nothing.
    Instance still = make_instance(3, path_graph(3).edges(), {{0, 0}});
    NiceTreeDecomposition td = build_nice_td(still.graph(), still.terminals());
    DpContext ctx = DpContext::make(still.graph(), still, td, 0, 4);
    DpTable leaf = dp_leaf(ctx, [&] {
        for (std::size_t i = 0; i < td.nodes.size(); ++i) {
            if (td.nodes[i].kind == TdKind::leaf) return static_cast<int>(i);
        }
        return -1;
    }());
    auto it = leaf.find(Chain{1, {0}});
    REQUIRE(it != leaf.end());
    CHECK(it->second.h == 0);
    DpTable root = dp_table(ctx, td.root);
    auto r = root.find(Chain{1, {0}});
    REQUIRE(r != root.end());
    CHECK(r->second.h + r->second.ext == 0);
}

TEST_CASE("solver on the small examples") {
    TwdpOptions opt;
    opt.checkpoint_budget = 4;
    auto p3 = solve_twdp(p3_trivial(), opt);
    CHECK(p3.status == TwdpStatus::optimal);
    CHECK(p3.energy == 2);
    CHECK(solve_twdp(p3_blocking()).status == TwdpStatus::infeasible);
    auto star = solve_twdp(star_instance());
    CHECK(star.status == TwdpStatus::optimal);
    CHECK(star.energy == 3);
    CHECK(solve_twdp(make_instance(2, path_graph(2).edges(), {{0, std::nullopt}})).energy == 0);
}

TEST_CASE("solver agrees with exact search and is monotone in the budget") {
    for (const Instance& in : random_corpus(30, 5, 7, 2)) {
        auto exact = solve_exact(in);
        auto tw = solve_twdp(in);
        if (tw.status == TwdpStatus::state_limit || exact.status == SearchStatus::state_limit) continue;
        CHECK(tw.energy == exact.energy);

        std::optional<Energy> prev;
        for (std::size_t budget : {2u, 4u, 8u}) {
            TwdpOptions opt;
            opt.checkpoint_budget = budget;
            auto r = solve_twdp(in, opt);
            if (r.status == TwdpStatus::state_limit) break;
            if (prev && r.energy) CHECK(*r.energy <= *prev);
            if (prev) CHECK(r.energy.has_value());
            prev = r.energy;
        }
    }
}

TEST_CASE("threads do not change the answer") {
    Instance in = star_instance();
    TwdpOptions opt;
    opt.threads = 4;
    CHECK(solve_twdp(in, opt).energy == solve_twdp(in).energy);
}
