#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coordmp/instance.hpp"

namespace coordmp {

// κ-partite graph with named vertices; edges only between distinct parts.
struct MulticoloredGraph {
    std::vector<std::vector<std::string>> parts;
    std::vector<std::pair<std::string, std::string>> edges;

    std::size_t kappa() const noexcept { return parts.size(); }
};

// `mcc 1`, `part <i> <vertices...>`, `edge <u> <v>`. Parts are ordered by index.
MulticoloredGraph parse_mcc(std::string_view text);
std::string render_mcc(const MulticoloredGraph& mcg);
// Throws InputError on empty or overlapping parts, unknown endpoints, intra-part or
// repeated edges.
void validate_mcc(const MulticoloredGraph& mcg);

struct McReduction {
    Instance instance;                // carries the budget
    std::vector<std::string> names;   // vertex id -> name
    std::size_t subdivision = 0;
    bool experimental = false;        // subdivision overridden
};

// Robots: one blocking robot per part vertex (start = goal), in part order, then one
// clique robot per part pair i < j going from s:i:j to t:i:j.
McReduction reduce_mcc(const MulticoloredGraph& mcg, std::optional<std::size_t> subdivision = std::nullopt);

// Schedule of energy exactly equal to the reduction's budget, built from a clique
// listing one vertex per part. Throws InputError when a pair is not adjacent.
Schedule witness_schedule(const MulticoloredGraph& mcg, const std::vector<std::string>& clique,
                          std::optional<std::size_t> subdivision = std::nullopt);

// Brute force over one vertex per part.
std::optional<std::vector<std::string>> find_multicolored_clique(const MulticoloredGraph& mcg);

Energy reduction_budget(std::size_t kappa, std::size_t subdivision);

std::string render_names(const std::vector<std::string>& names);

}  // namespace coordmp
