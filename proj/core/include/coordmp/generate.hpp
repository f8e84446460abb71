#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "coordmp/instance.hpp"

namespace coordmp {

enum class GraphKind { path, cycle, star, grid, random_tree, random };

struct GenParams {
    GraphKind kind = GraphKind::path;
    std::size_t n = 3;        // vertex count (star: leaves + 1; grid uses w*h)
    std::size_t w = 0;
    std::size_t h = 0;
    std::size_t robots = 1;
    std::size_t free_robots = 0;  // the last `free_robots` robots get no goal
    double edge_probability = 0.2;  // random: chance of each extra edge beyond a spanning tree
    std::optional<Energy> budget;
    std::uint64_t seed = 0;
};

// Deterministic for a given seed. Throws InputError on over-constrained parameters.
Instance generate(const GenParams& params);

Graph generate_graph(const GenParams& params, std::mt19937_64& rng);

GraphKind parse_graph_kind(const std::string& name);
std::string to_string(GraphKind kind);

// Uniform integer in [0, bound) that does not depend on the standard library's
// distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace coordmp
