#include "coordmp/generate.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "coordmp/error.hpp"

namespace coordmp {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw InputError("empty sampling range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// First `count` entries of a seeded Fisher-Yates shuffle of 0..n-1.
std::vector<Vertex> sample(std::mt19937_64& rng, std::size_t n, std::size_t count) {
    std::vector<Vertex> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

}  // namespace

Graph generate_graph(const GenParams& p, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::size_t n = p.n;
    auto add = [&](std::size_t u, std::size_t v) { edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v)); };
    switch (p.kind) {
        case GraphKind::path:
            for (std::size_t i = 0; i + 1 < n; ++i) add(i, i + 1);
            break;
        case GraphKind::cycle:
            if (n < 3) throw InputError("a cycle needs at least 3 vertices");
            for (std::size_t i = 0; i < n; ++i) add(i, (i + 1) % n);
            break;
        case GraphKind::star:
            for (std::size_t i = 1; i < n; ++i) add(0, i);
            break;
        case GraphKind::grid:
            if (p.w == 0 || p.h == 0) throw InputError("grid needs positive width and height");
            n = p.w * p.h;
            for (std::size_t y = 0; y < p.h; ++y) {
                for (std::size_t x = 0; x < p.w; ++x) {
                    std::size_t v = y * p.w + x;
                    if (x + 1 < p.w) add(v, v + 1);
                    if (y + 1 < p.h) add(v, v + p.w);
                }
            }
            break;
        case GraphKind::random_tree:
        case GraphKind::random: {
            for (std::size_t i = 1; i < n; ++i) add(static_cast<std::size_t>(uniform_below(rng, i)), i);
            if (p.kind == GraphKind::random) {
                std::set<Edge> present;
                for (auto [u, v] : edges) present.emplace(std::min(u, v), std::max(u, v));
                for (std::size_t u = 0; u < n; ++u) {
                    for (std::size_t v = u + 1; v < n; ++v) {
                        if (present.count({static_cast<Vertex>(u), static_cast<Vertex>(v)})) continue;
                        if (unit(rng) < p.edge_probability) add(u, v);
                    }
                }
            }
            break;
        }
    }
    return Graph(n, edges);
}

Instance generate(const GenParams& p) {
    if (p.free_robots > p.robots) throw InputError("more free robots than robots");
    if (p.edge_probability < 0.0 || p.edge_probability > 1.0) throw InputError("edge probability outside [0,1]");
    std::mt19937_64 rng(p.seed);
    Graph g = generate_graph(p, rng);
    const std::size_t n = g.vertex_count();
    if (p.robots > n) throw InputError("more robots (" + std::to_string(p.robots) + ") than vertices (" + std::to_string(n) + ")");
    const std::size_t with_goal = p.robots - p.free_robots;
    auto starts = sample(rng, n, p.robots);
    auto goals = sample(rng, n, with_goal);
    std::vector<Robot> robots(p.robots);
    for (std::size_t i = 0; i < p.robots; ++i) {
        robots[i].start = starts[i];
        if (i < with_goal) robots[i].goal = goals[i];
    }
    return Instance(std::move(g), std::move(robots), p.budget);
}

GraphKind parse_graph_kind(const std::string& name) {
    if (name == "path") return GraphKind::path;
    if (name == "cycle") return GraphKind::cycle;
    if (name == "star") return GraphKind::star;
    if (name == "grid") return GraphKind::grid;
    if (name == "random-tree") return GraphKind::random_tree;
    if (name == "random") return GraphKind::random;
    throw InputError("unknown graph kind '" + name + "'");
}

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::path: return "path";
        case GraphKind::cycle: return "cycle";
        case GraphKind::star: return "star";
        case GraphKind::grid: return "grid";
        case GraphKind::random_tree: return "random-tree";
        case GraphKind::random: return "random";
    }
    return "unknown";
}

}  // namespace coordmp
