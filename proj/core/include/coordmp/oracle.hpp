#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coordmp/instance.hpp"

namespace coordmp {

struct SearchLimits {
    std::size_t max_states = 4'000'000;           // discovered configurations
    std::size_t max_horizon = std::size_t{1} << 20;  // transitions along a returned plan

    // Defaults sized for n <= 12, k <= 4; COORDMP_STATE_CAP overrides max_states.
    static SearchLimits defaults();
};

enum class SearchStatus { optimal, infeasible, budget_exceeded, state_limit };

struct SearchResult {
    SearchStatus status = SearchStatus::infeasible;
    std::optional<Energy> energy;
    std::optional<Schedule> schedule;
    std::size_t states_expanded = 0;
};

// Allowed vertices per robot (ascending). Each robot's start and goal must be allowed.
struct MotionDomainSet {
    std::vector<std::vector<Vertex>> allowed;

    static MotionDomainSet full(const Instance& instance);
};

enum class Feasibility { feasible, infeasible, state_limit };

struct FeasibilityResult {
    Feasibility status = Feasibility::infeasible;
    std::optional<Schedule> witness;
    std::size_t states_expanded = 0;
};

// Least-energy schedule by Dijkstra over injective configurations. A transition moves
// any non-empty subset of robots one edge each without conflicts; its weight is the
// number of movers. Ties are broken by the lexicographically smallest configuration.
SearchResult solve_exact(const Instance& instance, const SearchLimits& limits = SearchLimits::defaults());

// Least-energy schedule among those within the instance budget; budget_exceeded with no
// energy when none exists. Explores only configurations reachable within the budget.
// Throws InputError without a budget.
SearchResult solve_within_budget(const Instance& instance, const SearchLimits& limits = SearchLimits::defaults());

// As solve_exact with robot i confined to domains.allowed[i].
SearchResult solve_restricted(const Instance& instance, const MotionDomainSet& domains,
                              const SearchLimits& limits = SearchLimits::defaults());

// Exact search over configurations on critical vertices only, with single-robot
// transits through runs of non-critical degree-2 vertices weighted by their length.
SearchResult solve_critical(const Instance& instance,
                            const SearchLimits& limits = SearchLimits::defaults());

// Vertices within distance k of a terminal or of a vertex whose degree is not 2.
std::vector<bool> critical_vertices(const Instance& instance);

// Reachability of any configuration placing every destination-bearing robot on its goal.
FeasibilityResult check_feasible(const Instance& instance,
                                 const SearchLimits& limits = SearchLimits::defaults());

// Largest number of times any vertex is entered over the whole schedule.
std::size_t max_visit_count(const Schedule& schedule);

std::string to_string(SearchStatus s);
std::string to_string(Feasibility f);

}  // namespace coordmp
