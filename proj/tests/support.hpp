#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coordmp/instance.hpp"

namespace coordmp::testing {

// Connected graphs on 1..max_n vertices, one per isomorphism class.
std::vector<Graph> connected_graphs(std::size_t max_n);

// Every placement of up to max_k robots: distinct starts, each robot either free or
// with a goal, goals distinct.
std::vector<Instance> placements(const Graph& g, std::size_t max_k);

// Seeded mix of generator families with n <= max_n and 1..max_k robots.
std::vector<Instance> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_n, std::size_t max_k);

Instance make_instance(std::size_t n, const std::vector<Edge>& edges, const std::vector<Robot>& robots,
                       std::optional<Energy> budget = std::nullopt);
Graph path_graph(std::size_t n);

// P3, robot 0 -> 2.
Instance p3_trivial(std::optional<Energy> budget = std::nullopt);
// P3, robot 0 -> 2 with a free robot parked on 1.
Instance p3_blocking();
// K_{1,3} centred at 0, robot 1 -> 2, free robot on 0.
Instance star_instance();

}  // namespace coordmp::testing
