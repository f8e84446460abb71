#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "coordmp/generate.hpp"

namespace coordmp::testing {

std::vector<Graph> connected_graphs(std::size_t max_n) {
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<Edge> slots;
        for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
            for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) slots.emplace_back(u, v);
        }
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        // Slot index of (perm[u], perm[v]) for every slot and permutation.
        std::vector<std::vector<int>> image(perms.size(), std::vector<int>(slots.size()));
        for (std::size_t q = 0; q < perms.size(); ++q) {
            for (std::size_t s = 0; s < slots.size(); ++s) {
                int a = perms[q][static_cast<std::size_t>(slots[s].first)];
                int b = perms[q][static_cast<std::size_t>(slots[s].second)];
                Edge e{std::min(a, b), std::max(a, b)};
                image[q][s] = static_cast<int>(std::find(slots.begin(), slots.end(), e) - slots.begin());
            }
        }
        std::set<std::uint32_t> seen;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << slots.size()); ++mask) {
            std::uint32_t canon = mask;
            for (std::size_t q = 0; q < perms.size(); ++q) {
                std::uint32_t m = 0;
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    if (mask >> s & 1U) m |= std::uint32_t{1} << image[q][s];
                }
                canon = std::min(canon, m);
            }
            if (!seen.insert(canon).second) continue;
            std::vector<Edge> edges;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (canon >> s & 1U) edges.push_back(slots[s]);
            }
            Graph g(n, edges);
            if (is_connected(g)) out.push_back(std::move(g));
        }
    }
    return out;
}

std::vector<Instance> placements(const Graph& g, std::size_t max_k) {
    std::vector<Instance> out;
    const auto n = static_cast<Vertex>(g.vertex_count());
    std::vector<Robot> robots;
    auto place = [&](auto& self, std::size_t k) -> void {
        if (robots.size() == k) {
            out.emplace_back(g, robots);
            return;
        }
        for (Vertex s = 0; s < n; ++s) {
            bool used = std::any_of(robots.begin(), robots.end(), [&](const Robot& r) { return r.start == s; });
            if (used) continue;
            for (Vertex t = -1; t < n; ++t) {
                if (t >= 0 && std::any_of(robots.begin(), robots.end(), [&](const Robot& r) { return r.goal == t; })) {
                    continue;
                }
                robots.push_back({s, t >= 0 ? std::optional<Vertex>(t) : std::nullopt});
                self(self, k);
                robots.pop_back();
            }
        }
    };
    for (std::size_t k = 1; k <= max_k && k <= g.vertex_count(); ++k) place(place, k);
    return out;
}

std::vector<Instance> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_n, std::size_t max_k) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    const GraphKind kinds[] = {GraphKind::random, GraphKind::random_tree, GraphKind::cycle, GraphKind::grid,
                               GraphKind::star, GraphKind::random};
    while (out.size() < count) {
        GenParams p;
        p.kind = kinds[uniform_below(rng, std::size(kinds))];
        p.n = 4 + uniform_below(rng, max_n - 3);
        if (p.kind == GraphKind::grid) {
            p.w = 2 + uniform_below(rng, 2);
            p.h = 2 + uniform_below(rng, 2);
        }
        p.robots = 1 + uniform_below(rng, max_k);
        p.free_robots = uniform_below(rng, p.robots);
        p.edge_probability = 0.15;
        p.seed = rng();
        out.push_back(generate(p));
    }
    return out;
}

Instance make_instance(std::size_t n, const std::vector<Edge>& edges, const std::vector<Robot>& robots,
                       std::optional<Energy> budget) {
    return Instance(Graph(n, edges), robots, budget);
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return Graph(n, edges);
}

Instance p3_trivial(std::optional<Energy> budget) { return Instance(path_graph(3), {{0, 2}}, budget); }

Instance p3_blocking() { return Instance(path_graph(3), {{0, 2}, {1, std::nullopt}}); }

Instance star_instance() {
    return make_instance(4, {{0, 1}, {0, 2}, {0, 3}}, {{1, 2}, {0, std::nullopt}});
}

}  // namespace coordmp::testing
