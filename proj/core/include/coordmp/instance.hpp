#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coordmp/graph.hpp"

namespace coordmp {

using RobotId = std::int32_t;
using Energy = std::int64_t;

struct Robot {
    Vertex start = 0;
    std::optional<Vertex> goal;  // absent for a free robot

    bool is_free() const noexcept { return !goal.has_value(); }
    friend bool operator==(const Robot&, const Robot&) = default;
};

// Graph plus robots indexed by position; robot i has id i.
class Instance {
public:
    Instance() = default;
    // Throws InputError when starts or goals collide or a vertex is out of range.
    Instance(Graph graph, std::vector<Robot> robots, std::optional<Energy> budget = std::nullopt);

    const Graph& graph() const noexcept { return graph_; }
    const std::vector<Robot>& robots() const noexcept { return robots_; }
    const Robot& robot(RobotId i) const { return robots_[static_cast<std::size_t>(i)]; }
    std::size_t robot_count() const noexcept { return robots_.size(); }
    const std::optional<Energy>& budget() const noexcept { return budget_; }

    Instance with_budget(std::optional<Energy> budget) const;

    std::vector<Vertex> starts() const;
    // Starts and goals, sorted and deduplicated.
    std::vector<Vertex> terminals() const;
    std::vector<RobotId> destination_robots() const;
    // Sum of start-goal distances over destination-bearing robots; none when some goal
    // is unreachable.
    std::optional<Energy> distance_lower_bound() const;

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    Graph graph_;
    std::vector<Robot> robots_;
    std::optional<Energy> budget_;
};

using Route = std::vector<Vertex>;

// k routes over a shared horizon t (each route has t+1 entries).
class Schedule {
public:
    Schedule() = default;
    // Throws InputError on ragged horizons.
    explicit Schedule(std::vector<Route> routes);
    // Everyone waits at the given positions for `horizon` steps.
    static Schedule stationary(const std::vector<Vertex>& positions, std::size_t horizon = 0);

    std::size_t robot_count() const noexcept { return routes_.size(); }
    std::size_t horizon() const noexcept { return horizon_; }
    const std::vector<Route>& routes() const noexcept { return routes_; }
    const Route& route(RobotId i) const { return routes_[static_cast<std::size_t>(i)]; }
    Vertex at(RobotId i, std::size_t step) const {
        return routes_[static_cast<std::size_t>(i)][step];
    }
    std::vector<Vertex> positions_at(std::size_t step) const;

    // Appends one step; `next` holds one position per robot.
    void push_step(const std::vector<Vertex>& next);
    // Concatenates `tail`, whose first positions must equal this schedule's last.
    void append(const Schedule& tail);
    Schedule reversed() const;

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::vector<Route> routes_;
    std::size_t horizon_ = 0;
};

enum class ConflictKind { vertex, edge_swap };

struct ConflictReport {
    ConflictKind kind;
    std::size_t step;  // time index at which the conflict materialises
    friend bool operator==(const ConflictReport&, const ConflictReport&) = default;
};

// Earliest conflict between two routes. Throws InputError on horizon mismatch.
std::optional<ConflictReport> conflicts(const Route& a, const Route& b);

Energy route_energy(const Route& r);
Energy energy(const Schedule& s);

enum class Violation {
    none,
    robot_count,
    wrong_start,
    wrong_goal,
    invalid_vertex,
    not_adjacent,
    vertex_conflict,
    edge_swap_conflict,
};

struct ValidationResult {
    Violation violation = Violation::none;
    std::vector<RobotId> robots;  // offending robot ids
    std::size_t step = 0;
    Energy energy = 0;
    bool over_budget = false;
    std::string message;

    bool ok() const noexcept { return violation == Violation::none; }
};

ValidationResult validate_schedule(const Instance& instance, const Schedule& schedule);

std::string to_string(Violation v);
std::string to_string(ConflictKind k);

}  // namespace coordmp
