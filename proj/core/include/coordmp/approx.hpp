#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coordmp/havenswap.hpp"
#include "coordmp/instance.hpp"
#include "coordmp/oracle.hpp"
#include "coordmp/structure.hpp"

namespace coordmp {

enum class ApproxStatus { ok, infeasible, unsupported_structure, state_limit };

struct ApproxOptions {
    // Number of alternative haven selections tried; the cheapest schedule wins.
    std::size_t guess_cap = 1;
    SearchLimits limits = SearchLimits::defaults();
};

struct ApproxReport {
    ApproxStatus status = ApproxStatus::infeasible;
    std::optional<Schedule> schedule;
    Energy energy = 0;
    Energy lower_bound = 0;  // sum of start-goal distances over destination robots
    Energy overhead = 0;
    std::string method;      // direct | havens | critical
    std::size_t havens_used = 0;
    std::optional<Vertex> offending_vertex;
    std::optional<VertexTypeTag> offending_tag;
};

ApproxReport approximate(const Instance& instance, const ApproxOptions& options = {});

// Disjoint havens chosen greedily by center id, starting the scan at `rotation`.
std::vector<Haven> select_havens(const NiceMap& nice, std::size_t rotation = 0);

// Moves `robot` along `path` (starting at its current position in `schedule`) and
// detours through every occupied haven on the way with a haven swap. Every robot off
// the path must sit inside one of the havens or off the path. Throws UnsupportedStructure
// when the path is blocked outside all havens.
void route_through_havens(const Graph& g, const std::vector<Haven>& havens, Schedule& schedule,
                          RobotId robot, const std::vector<Vertex>& path);

class UnsupportedStructure : public std::runtime_error {
public:
    explicit UnsupportedStructure(const std::string& what) : std::runtime_error(what) {}
};

// Exact search for instances with one destination robot; free robots are confined to
// motion domains around nearby nice vertices. Throws InputError unless exactly one
// robot has a destination.
SearchResult solve_gcmp1(const Instance& instance, DomainParams params = {},
                         const SearchLimits& limits = SearchLimits::defaults());

// Domains solve_gcmp1 uses, exposed for inspection.
MotionDomainSet gcmp1_domains(const Instance& instance, DomainParams params = {});

struct BallRestriction {
    bool no_instance = false;
    std::string reason;
    std::optional<Instance> reduced;
    std::vector<Vertex> vertex_map;  // reduced vertex id -> original id
    std::vector<RobotId> robot_map;  // reduced robot id -> original id
};

// Restricts a budgeted instance to the union of budget-radius balls around the starts of
// robots that must move. Throws InputError without a budget.
BallRestriction energy_ball_restrict(const Instance& instance);

std::string to_string(ApproxStatus s);

}  // namespace coordmp
