#include "coordmp/instance.hpp"

#include <algorithm>
#include <set>

#include "coordmp/error.hpp"

namespace coordmp {

Instance::Instance(Graph graph, std::vector<Robot> robots, std::optional<Energy> budget)
    : graph_(std::move(graph)), robots_(std::move(robots)), budget_(budget) {
    std::set<Vertex> starts;
    std::set<Vertex> goals;
    for (std::size_t i = 0; i < robots_.size(); ++i) {
        const Robot& r = robots_[i];
        const std::string who = "robot " + std::to_string(i);
        if (!graph_.valid(r.start)) throw InputError(who + ": start out of range");
        if (r.goal && !graph_.valid(*r.goal)) throw InputError(who + ": goal out of range");
        if (!starts.insert(r.start).second) {
            throw InputError(who + ": duplicate start " + std::to_string(r.start));
        }
        if (r.goal && !goals.insert(*r.goal).second) {
            throw InputError(who + ": duplicate goal " + std::to_string(*r.goal));
        }
    }
    if (budget_ && *budget_ < 0) throw InputError("negative budget");
}

Instance Instance::with_budget(std::optional<Energy> budget) const {
    Instance copy = *this;
    copy.budget_ = budget;
    return copy;
}

std::vector<Vertex> Instance::starts() const {
    std::vector<Vertex> out;
    out.reserve(robots_.size());
    for (const Robot& r : robots_) out.push_back(r.start);
    return out;
}

std::vector<Vertex> Instance::terminals() const {
    std::vector<Vertex> out;
    for (const Robot& r : robots_) {
        out.push_back(r.start);
        if (r.goal) out.push_back(*r.goal);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<RobotId> Instance::destination_robots() const {
    std::vector<RobotId> out;
    for (std::size_t i = 0; i < robots_.size(); ++i) {
        if (robots_[i].goal) out.push_back(static_cast<RobotId>(i));
    }
    return out;
}

std::optional<Energy> Instance::distance_lower_bound() const {
    Energy total = 0;
    for (const Robot& r : robots_) {
        if (!r.goal) continue;
        auto d = shortest_path_distance(graph_, r.start, *r.goal);
        if (!d) return std::nullopt;
        total += *d;
    }
    return total;
}

Schedule::Schedule(std::vector<Route> routes) : routes_(std::move(routes)) {
    if (routes_.empty()) return;
    if (routes_.front().empty()) throw InputError("route without positions");
    horizon_ = routes_.front().size() - 1;
    for (std::size_t i = 0; i < routes_.size(); ++i) {
        if (routes_[i].size() != horizon_ + 1) {
            throw InputError("ragged horizons: robot " + std::to_string(i) + " has " +
                             std::to_string(routes_[i].size()) + " positions, expected " +
                             std::to_string(horizon_ + 1));
        }
    }
}

Schedule Schedule::stationary(const std::vector<Vertex>& positions, std::size_t horizon) {
    std::vector<Route> routes;
    routes.reserve(positions.size());
    for (Vertex v : positions) routes.emplace_back(horizon + 1, v);
    Schedule s;
    s.routes_ = std::move(routes);
    s.horizon_ = horizon;
    return s;
}

std::vector<Vertex> Schedule::positions_at(std::size_t step) const {
    std::vector<Vertex> out;
    out.reserve(routes_.size());
    for (const Route& r : routes_) out.push_back(r[step]);
    return out;
}

void Schedule::push_step(const std::vector<Vertex>& next) {
    if (next.size() != routes_.size()) throw InputError("step width differs from robot count");
    for (std::size_t i = 0; i < routes_.size(); ++i) routes_[i].push_back(next[i]);
    ++horizon_;
}

void Schedule::append(const Schedule& tail) {
    if (tail.robot_count() != robot_count()) throw InputError("appending schedule of other width");
    for (std::size_t i = 0; i < routes_.size(); ++i) {
        if (routes_[i].back() != tail.routes_[i].front()) {
            throw InputError("appended schedule does not continue robot " + std::to_string(i));
        }
        routes_[i].insert(routes_[i].end(), tail.routes_[i].begin() + 1, tail.routes_[i].end());
    }
    horizon_ += tail.horizon_;
}

Schedule Schedule::reversed() const {
    Schedule out = *this;
    for (Route& r : out.routes_) std::reverse(r.begin(), r.end());
    return out;
}

std::optional<ConflictReport> conflicts(const Route& a, const Route& b) {
    if (a.size() != b.size()) throw InputError("conflict check on routes of different horizons");
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r] == b[r]) return ConflictReport{ConflictKind::vertex, r};
        if (r + 1 < a.size() && a[r + 1] == b[r] && b[r + 1] == a[r] && a[r] != a[r + 1]) {
            // A vertex conflict at r+1 would need a[r+1]==b[r+1], impossible here, so the
            // swap is the earliest event of step r+1.
            return ConflictReport{ConflictKind::edge_swap, r + 1};
        }
    }
    return std::nullopt;
}

Energy route_energy(const Route& r) {
    Energy e = 0;
    for (std::size_t j = 0; j + 1 < r.size(); ++j) e += (r[j] != r[j + 1]) ? 1 : 0;
    return e;
}

Energy energy(const Schedule& s) {
    Energy e = 0;
    for (const Route& r : s.routes()) e += route_energy(r);
    return e;
}

namespace {

ValidationResult fail(Violation v, std::vector<RobotId> robots, std::size_t step, std::string msg) {
    ValidationResult out;
    out.violation = v;
    out.robots = std::move(robots);
    out.step = step;
    out.message = std::move(msg);
    return out;
}

}  // namespace

ValidationResult validate_schedule(const Instance& instance, const Schedule& schedule) {
    const Graph& g = instance.graph();
    const std::size_t k = instance.robot_count();
    if (schedule.robot_count() != k) {
        return fail(Violation::robot_count, {}, 0,
                    "schedule has " + std::to_string(schedule.robot_count()) + " routes, instance " +
                        std::to_string(k) + " robots");
    }
    const std::size_t t = schedule.horizon();
    for (std::size_t i = 0; i < k; ++i) {
        const auto id = static_cast<RobotId>(i);
        const Route& r = schedule.route(id);
        for (std::size_t j = 0; j <= t; ++j) {
            if (!g.valid(r[j])) {
                return fail(Violation::invalid_vertex, {id}, j,
                            "robot " + std::to_string(i) + " at invalid vertex");
            }
        }
        if (r.front() != instance.robot(id).start) {
            return fail(Violation::wrong_start, {id}, 0,
                        "robot " + std::to_string(i) + " does not begin at its start");
        }
        for (std::size_t j = 0; j < t; ++j) {
            if (r[j] != r[j + 1] && !g.has_edge(r[j], r[j + 1])) {
                return fail(Violation::not_adjacent, {id}, j + 1,
                            "robot " + std::to_string(i) + " jumps " + std::to_string(r[j]) +
                                " -> " + std::to_string(r[j + 1]));
            }
        }
        if (const auto& goal = instance.robot(id).goal; goal && r.back() != *goal) {
            return fail(Violation::wrong_goal, {id}, t,
                        "robot " + std::to_string(i) + " does not end at its goal");
        }
    }
    // Earliest conflict over all pairs; ties broken by the lowest robot pair.
    std::optional<ValidationResult> earliest;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            auto c = conflicts(schedule.route(static_cast<RobotId>(i)),
                               schedule.route(static_cast<RobotId>(j)));
            if (!c) continue;
            if (earliest && earliest->step <= c->step) continue;
            const bool swap = c->kind == ConflictKind::edge_swap;
            earliest = fail(swap ? Violation::edge_swap_conflict : Violation::vertex_conflict,
                            {static_cast<RobotId>(i), static_cast<RobotId>(j)}, c->step,
                            std::string(swap ? "edge-swap" : "vertex") + " conflict between robots " +
                                std::to_string(i) + " and " + std::to_string(j) + " at step " +
                                std::to_string(c->step));
        }
    }
    if (earliest) return *earliest;
    ValidationResult ok;
    ok.energy = energy(schedule);
    ok.over_budget = instance.budget() && ok.energy > *instance.budget();
    ok.message = ok.over_budget ? "ok but over budget" : "ok";
    return ok;
}

std::string to_string(Violation v) {
    switch (v) {
        case Violation::none: return "none";
        case Violation::robot_count: return "robot-count";
        case Violation::wrong_start: return "wrong-start";
        case Violation::wrong_goal: return "wrong-goal";
        case Violation::invalid_vertex: return "invalid-vertex";
        case Violation::not_adjacent: return "not-adjacent";
        case Violation::vertex_conflict: return "vertex-conflict";
        case Violation::edge_swap_conflict: return "edge-swap";
    }
    return "unknown";
}

std::string to_string(ConflictKind k) {
    return k == ConflictKind::vertex ? "vertex" : "edge-swap";
}

}  // namespace coordmp
