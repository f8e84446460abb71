#include "coordmp/approx.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "coordmp/error.hpp"

namespace coordmp {

namespace {

// Tracks robot positions while appending steps to a schedule.
class World {
public:
    World(const Graph& g, const std::vector<Haven>& havens, Schedule& out)
        : g_(g), havens_(havens), out_(out), haven_of_(g.vertex_count(), -1), occ_(g.vertex_count(), -1) {
        for (std::size_t h = 0; h < havens.size(); ++h) {
            for (Vertex v : havens[h].members) haven_of_[static_cast<std::size_t>(v)] = static_cast<int>(h);
        }
        pos_ = out.positions_at(out.horizon());
        for (std::size_t r = 0; r < pos_.size(); ++r) occ_[static_cast<std::size_t>(pos_[r])] = static_cast<RobotId>(r);
    }

    const std::vector<Vertex>& positions() const { return pos_; }
    Vertex pos(RobotId r) const { return pos_[static_cast<std::size_t>(r)]; }
    RobotId at(Vertex v) const { return occ_[static_cast<std::size_t>(v)]; }
    int haven_of(Vertex v) const { return haven_of_[static_cast<std::size_t>(v)]; }
    bool in_haven(Vertex v) const { return haven_of(v) != -1; }

    // One parallel step; targets must be free or vacated in the same step.
    void step(const std::vector<std::pair<RobotId, Vertex>>& moves) {
        for (auto [r, v] : moves) occ_[static_cast<std::size_t>(pos(r))] = -1;
        for (auto [r, v] : moves) {
            if (occ_[static_cast<std::size_t>(v)] != -1) throw std::logic_error("approximation step collides");
            pos_[static_cast<std::size_t>(r)] = v;
            occ_[static_cast<std::size_t>(v)] = r;
        }
        out_.push_step(pos_);
    }

    void apply(const MoveSequence& moves) {
        for (const Move& m : moves) step({{m.robot, m.to}});
    }

    HavenConfiguration residents(int h) const {
        HavenConfiguration c;
        for (Vertex v : havens_[static_cast<std::size_t>(h)].members) {
            if (RobotId r = at(v); r != -1) c.placement[r] = v;
        }
        return c;
    }

    // Rearranges haven h so that pinned robots reach their vertices and `clear` is empty;
    // other residents stay where they are when possible.
    void rearrange(int h, const std::map<RobotId, Vertex>& pinned, const std::set<Vertex>& clear) {
        const Haven& haven = havens_[static_cast<std::size_t>(h)];
        HavenConfiguration from = residents(h);
        HavenConfiguration to;
        std::set<Vertex> taken;
        for (auto [r, v] : pinned) {
            to.placement[r] = v;
            taken.insert(v);
        }
        std::vector<RobotId> displaced;
        for (auto [r, v] : from.placement) {
            if (pinned.count(r)) continue;
            if (!taken.count(v) && !clear.count(v)) {
                to.placement[r] = v;
                taken.insert(v);
            } else {
                displaced.push_back(r);
            }
        }
        for (RobotId r : displaced) {
            for (Vertex v : haven.members) {
                if (!taken.count(v) && !clear.count(v)) {
                    to.placement[r] = v;
                    taken.insert(v);
                    break;
                }
            }
        }
        if (from == to) return;
        apply(haven_swap(g_, haven, from, to));
    }

    void vacate(int h, Vertex v) {
        if (at(v) != -1) rearrange(h, {}, {v});
    }

private:
    const Graph& g_;
    const std::vector<Haven>& havens_;
    Schedule& out_;
    std::vector<int> haven_of_;
    std::vector<RobotId> occ_;
    std::vector<Vertex> pos_;
};

std::vector<std::vector<int>> haven_distances(const Graph& g, const std::vector<Haven>& havens) {
    std::vector<std::vector<int>> out;
    for (const Haven& h : havens) out.push_back(bfs_distances(g, std::span<const Vertex>(h.members)));
    return out;
}

// Pushes every robot outside the havens into one, nearest robots first.
void gather(const Graph& g, const std::vector<Haven>& havens, Schedule& out) {
    World world(g, havens, out);
    const auto dist = haven_distances(g, havens);
    const std::size_t k = world.positions().size();
    while (true) {
        RobotId pick = -1;
        int pick_haven = -1;
        int pick_dist = std::numeric_limits<int>::max();
        for (std::size_t r = 0; r < k; ++r) {
            const Vertex v = world.pos(static_cast<RobotId>(r));
            if (world.in_haven(v)) continue;
            bool reachable = false;
            for (std::size_t h = 0; h < havens.size(); ++h) {
                int d = dist[h][static_cast<std::size_t>(v)];
                if (d == kUnreachable) continue;
                reachable = true;
                if (d < pick_dist) {
                    pick = static_cast<RobotId>(r);
                    pick_haven = static_cast<int>(h);
                    pick_dist = d;
                }
            }
            if (!reachable) throw UnsupportedStructure("robot " + std::to_string(r) + " cannot reach any haven");
        }
        if (pick == -1) return;
        // Greedy descent toward the haven picks the lowest-id next vertex.
        const auto& dh = dist[static_cast<std::size_t>(pick_haven)];
        std::vector<Vertex> path{world.pos(pick)};
        while (dh[static_cast<std::size_t>(path.back())] > 0) {
            for (Vertex w : g.neighbors(path.back())) {
                if (dh[static_cast<std::size_t>(w)] == dh[static_cast<std::size_t>(path.back())] - 1) {
                    path.push_back(w);
                    break;
                }
            }
        }
        const std::size_t last = path.size() - 1;
        for (std::size_t idx = 0; idx < last; ++idx) {
            std::size_t j = idx;
            while (j + 1 < last && world.at(path[j + 1]) != -1) ++j;
            if (j + 1 == last) world.vacate(pick_haven, path[last]);
            std::vector<std::pair<RobotId, Vertex>> moves;
            for (std::size_t m = idx; m <= j; ++m) moves.emplace_back(world.at(path[m]), path[m + 1]);
            world.step(moves);
        }
    }
}

}  // namespace

void route_through_havens(const Graph& g, const std::vector<Haven>& havens, Schedule& schedule,
                          RobotId robot, const std::vector<Vertex>& path) {
    World world(g, havens, schedule);
    if (path.empty() || world.pos(robot) != path.front()) throw InputError("path does not start at the robot");
    std::size_t i = 0;
    while (i + 1 < path.size()) {
        const Vertex next = path[i + 1];
        if (!g.has_edge(path[i], next)) throw InputError("path is not a walk");
        if (world.at(next) == -1) {
            world.step({{robot, next}});
            ++i;
            continue;
        }
        const int h = world.haven_of(next);
        if (h == -1) {
            throw UnsupportedStructure("path blocked at vertex " + std::to_string(next) + " outside all havens");
        }
        if (world.haven_of(path[i]) != h) {
            world.vacate(h, next);
            world.step({{robot, next}});
            ++i;
        }
        std::size_t j = i;
        for (std::size_t m = i; m < path.size(); ++m) {
            if (world.haven_of(path[m]) == h) j = m;
        }
        if (j > i) {
            world.rearrange(h, {{robot, path[j]}}, {});
            i = j;
        }
    }
}

std::vector<Haven> select_havens(const NiceMap& nice, std::size_t rotation) {
    std::vector<Vertex> centers = nice_vertices(nice);
    std::vector<Haven> chosen;
    if (centers.empty()) return chosen;
    rotation %= centers.size();
    std::rotate(centers.begin(), centers.begin() + static_cast<std::ptrdiff_t>(rotation), centers.end());
    std::set<Vertex> used;
    for (Vertex c : centers) {
        const Haven& h = *nice[static_cast<std::size_t>(c)];
        if (std::any_of(h.members.begin(), h.members.end(), [&](Vertex v) { return used.count(v) > 0; })) continue;
        used.insert(h.members.begin(), h.members.end());
        chosen.push_back(h);
    }
    std::sort(chosen.begin(), chosen.end(), [](const Haven& a, const Haven& b) { return a.center < b.center; });
    return chosen;
}

namespace {

// Sequential shortest paths; each robot treats the others as fixed obstacles.
std::optional<Schedule> direct_routing(const Instance& instance) {
    const Graph& g = instance.graph();
    Schedule out = Schedule::stationary(instance.starts());
    std::vector<Vertex> pos = instance.starts();
    for (std::size_t r = 0; r < instance.robot_count(); ++r) {
        const auto& goal = instance.robots()[r].goal;
        if (!goal || *goal == pos[r]) continue;
        std::vector<bool> allowed(g.vertex_count(), true);
        for (std::size_t o = 0; o < pos.size(); ++o) {
            if (o != r) allowed[static_cast<std::size_t>(pos[o])] = false;
        }
        if (!allowed[static_cast<std::size_t>(*goal)]) return std::nullopt;
        auto path = shortest_path(g, pos[r], *goal, &allowed);
        if (path.empty()) return std::nullopt;
        for (std::size_t i = 1; i < path.size(); ++i) {
            pos[r] = path[i];
            out.push_step(pos);
        }
    }
    return out;
}

std::optional<Schedule> haven_pipeline(const Instance& instance, const std::vector<Haven>& havens) {
    const Graph& g = instance.graph();
    const std::size_t k = instance.robot_count();

    Schedule forward = Schedule::stationary(instance.starts());
    gather(g, havens, forward);
    const std::vector<Vertex> x_pos = forward.positions_at(forward.horizon());

    std::vector<int> haven_of(g.vertex_count(), -1);
    for (std::size_t h = 0; h < havens.size(); ++h) {
        for (Vertex v : havens[h].members) haven_of[static_cast<std::size_t>(v)] = static_cast<int>(h);
    }

    // Goal side: destination robots on their goals, free robots parked in their haven.
    std::vector<Vertex> z_pos(k, kNoVertex);
    std::set<Vertex> blocked;
    for (const Robot& r : instance.robots()) {
        if (r.goal) blocked.insert(*r.goal);
    }
    for (std::size_t r = 0; r < k; ++r) {
        const auto& goal = instance.robots()[r].goal;
        if (goal) {
            z_pos[r] = *goal;
            continue;
        }
        const Haven& h = havens[static_cast<std::size_t>(haven_of[static_cast<std::size_t>(x_pos[r])])];
        for (Vertex v : h.members) {
            if (!blocked.count(v)) {
                z_pos[r] = v;
                blocked.insert(v);
                break;
            }
        }
        if (z_pos[r] == kNoVertex) return std::nullopt;
    }
    Schedule backward = Schedule::stationary(z_pos);
    gather(g, havens, backward);
    const std::vector<Vertex> y_pos = backward.positions_at(backward.horizon());

    // Middle: carry destination robots between havens, then fix each haven's layout.
    for (std::size_t r = 0; r < k; ++r) {
        if (!instance.robots()[r].goal) continue;
        const Vertex cur = forward.at(r, forward.horizon());
        if (haven_of[static_cast<std::size_t>(cur)] == haven_of[static_cast<std::size_t>(y_pos[r])]) continue;
        route_through_havens(g, havens, forward, static_cast<RobotId>(r), shortest_path(g, cur, y_pos[r]));
    }
    {
        World world(g, havens, forward);
        for (std::size_t h = 0; h < havens.size(); ++h) {
            std::map<RobotId, Vertex> pinned;
            for (auto [r, v] : world.residents(static_cast<int>(h)).placement) {
                pinned[r] = y_pos[static_cast<std::size_t>(r)];
            }
            world.rearrange(static_cast<int>(h), pinned, {});
        }
    }
    if (forward.positions_at(forward.horizon()) != y_pos) throw std::logic_error("haven layouts do not meet");
    forward.append(backward.reversed());
    return forward;
}

ApproxReport finish(const Instance& instance, Schedule schedule, std::string method, std::size_t havens) {
    auto check = validate_schedule(instance.with_budget(std::nullopt), schedule);
    if (!check.ok()) throw std::logic_error("approximation produced an invalid schedule: " + check.message);
    ApproxReport rep;
    rep.status = ApproxStatus::ok;
    rep.energy = check.energy;
    rep.lower_bound = instance.distance_lower_bound().value_or(0);
    rep.overhead = rep.energy - rep.lower_bound;
    rep.schedule = std::move(schedule);
    rep.method = std::move(method);
    rep.havens_used = havens;
    return rep;
}

}  // namespace

ApproxReport approximate(const Instance& instance, const ApproxOptions& options) {
    ApproxReport rep;
    auto feas = check_feasible(instance, options.limits);
    if (feas.status == Feasibility::infeasible) {
        rep.status = ApproxStatus::infeasible;
        return rep;
    }
    const auto lb = instance.distance_lower_bound();
    if (!lb) {
        rep.status = ApproxStatus::infeasible;
        return rep;
    }
    if (instance.destination_robots().empty()) {
        return finish(instance, Schedule::stationary(instance.starts()), "direct", 0);
    }
    std::optional<ApproxReport> best;
    auto consider = [&](ApproxReport candidate) {
        if (!best || candidate.energy < best->energy) best = std::move(candidate);
    };
    if (auto direct = direct_routing(instance)) {
        consider(finish(instance, std::move(*direct), "direct", 0));
        if (best->overhead == 0) return *best;
    }

    const Graph& g = instance.graph();
    const int k = static_cast<int>(instance.robot_count());
    const NiceMap nice = find_all_nice(g, k);
    const std::vector<Vertex> centers = nice_vertices(nice);
    if (centers.empty()) {
        SearchResult exact = solve_critical(instance.with_budget(std::nullopt), options.limits);
        if (exact.status == SearchStatus::optimal) {
            consider(finish(instance, std::move(*exact.schedule), "critical", 0));
            return *best;
        }
        if (best) return *best;
        rep.status = exact.status == SearchStatus::infeasible ? ApproxStatus::infeasible : ApproxStatus::state_limit;
        return rep;
    }

    // Every terminal must lie near a nice vertex.
    const auto near = bfs_distances(g, std::span<const Vertex>(centers));
    for (Vertex v : instance.terminals()) {
        int d = near[static_cast<std::size_t>(v)];
        if (d == kUnreachable || d > 11 * k) {
            if (best) return *best;
            rep.status = ApproxStatus::unsupported_structure;
            rep.offending_vertex = v;
            rep.offending_tag = classify_vertex(g, v, k, nice);
            return rep;
        }
    }
    const std::size_t tries = std::max<std::size_t>(1, std::min(options.guess_cap, centers.size()));
    Vertex unreachable = kNoVertex;
    for (std::size_t t = 0; t < tries; ++t) {
        std::vector<Haven> havens = select_havens(nice, t);
        // Each robot's component needs a chosen haven.
        const auto comp = connected_components(g);
        std::set<int> covered;
        for (const Haven& h : havens) covered.insert(comp[static_cast<std::size_t>(h.center)]);
        unreachable = kNoVertex;
        for (Vertex s : instance.starts()) {
            if (!covered.count(comp[static_cast<std::size_t>(s)])) unreachable = s;
        }
        if (unreachable != kNoVertex) continue;
        try {
            if (auto sched = haven_pipeline(instance, havens)) {
                consider(finish(instance, std::move(*sched), "havens", havens.size()));
            }
        } catch (const UnsupportedStructure&) {
            continue;
        }
    }
    if (best) return *best;
    rep.status = ApproxStatus::unsupported_structure;
    const Vertex v = unreachable != kNoVertex ? unreachable : instance.starts().front();
    rep.offending_vertex = v;
    rep.offending_tag = classify_vertex(g, v, k, nice);
    return rep;
}

MotionDomainSet gcmp1_domains(const Instance& instance, DomainParams params) {
    const Graph& g = instance.graph();
    const int k = static_cast<int>(instance.robot_count());
    const NiceMap nice = find_all_nice(g, k);
    const std::vector<Vertex> centers = nice_vertices(nice);
    MotionDomainSet out = MotionDomainSet::full(instance);
    for (std::size_t r = 0; r < instance.robot_count(); ++r) {
        const Robot& robot = instance.robots()[r];
        if (robot.goal) continue;
        const auto dist = bfs_distances(g, robot.start);
        int lambda = -1;
        for (Vertex c : centers) {
            int d = dist[static_cast<std::size_t>(c)];
            if (d != kUnreachable && (lambda == -1 || d < lambda)) lambda = d;
        }
        if (lambda != -1) {
            if (auto dom = compute_motion_domain(instance, static_cast<RobotId>(r), lambda, params, nice)) {
                out.allowed[r] = std::move(*dom);
                continue;
            }
        }
        VertexTypeTag tag = classify_vertex(g, robot.start, k, nice);
        if (tag.type == VertexType::type3) {
            // Pocket plus the k path vertices closest to it.
            std::vector<Vertex> dom = tag.pocket;
            const auto to_pocket = bfs_distances(g, std::span<const Vertex>(tag.pocket));
            std::vector<Vertex> along = tag.path.path;
            std::stable_sort(along.begin(), along.end(), [&](Vertex a, Vertex b) {
                return to_pocket[static_cast<std::size_t>(a)] < to_pocket[static_cast<std::size_t>(b)];
            });
            along.resize(std::min<std::size_t>(along.size(), static_cast<std::size_t>(k)));
            dom.insert(dom.end(), along.begin(), along.end());
            if (std::find(dom.begin(), dom.end(), robot.start) == dom.end()) dom.push_back(robot.start);
            std::sort(dom.begin(), dom.end());
            dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
            out.allowed[r] = std::move(dom);
        }
    }
    return out;
}

SearchResult solve_gcmp1(const Instance& instance, DomainParams params, const SearchLimits& limits) {
    if (instance.destination_robots().size() != 1) {
        throw InputError("gcmp1 needs exactly one destination robot, got " +
                         std::to_string(instance.destination_robots().size()));
    }
    return solve_restricted(instance, gcmp1_domains(instance, params), limits);
}

BallRestriction energy_ball_restrict(const Instance& instance) {
    if (!instance.budget()) throw InputError("energy-ball preprocessing needs a budget");
    const Energy budget = *instance.budget();
    const Graph& g = instance.graph();
    BallRestriction out;
    std::vector<Vertex> moving;
    for (const Robot& r : instance.robots()) {
        if (r.goal && *r.goal != r.start) moving.push_back(r.start);
    }
    if (static_cast<Energy>(moving.size()) > budget) {
        out.no_instance = true;
        out.reason = std::to_string(moving.size()) + " robots must move but the budget is " + std::to_string(budget);
        return out;
    }
    const auto dist = bfs_distances(g, std::span<const Vertex>(moving));
    std::vector<Vertex> keep;
    std::vector<Vertex> index(g.vertex_count(), kNoVertex);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] != kUnreachable && dist[v] <= budget) {
            index[v] = static_cast<Vertex>(keep.size());
            keep.push_back(static_cast<Vertex>(v));
        }
    }
    for (const Robot& r : instance.robots()) {
        if (r.goal && *r.goal != r.start && index[static_cast<std::size_t>(*r.goal)] == kNoVertex) {
            out.no_instance = true;
            out.reason = "goal " + std::to_string(*r.goal) + " lies farther than the budget";
            return out;
        }
    }
    std::vector<Robot> robots;
    for (std::size_t i = 0; i < instance.robot_count(); ++i) {
        const Robot& r = instance.robots()[i];
        if (index[static_cast<std::size_t>(r.start)] == kNoVertex) continue;
        Robot nr;
        nr.start = index[static_cast<std::size_t>(r.start)];
        if (r.goal) {
            // A kept robot with start == goal keeps its goal; goals outside the ball
            // only occur for robots that never need to move.
            Vertex mapped = index[static_cast<std::size_t>(*r.goal)];
            nr.goal = mapped == kNoVertex ? nr.start : mapped;
        }
        robots.push_back(nr);
        out.robot_map.push_back(static_cast<RobotId>(i));
    }
    out.vertex_map = keep;
    out.reduced = Instance(g.induced(keep), std::move(robots), budget);
    return out;
}

std::string to_string(ApproxStatus s) {
    switch (s) {
        case ApproxStatus::ok: return "ok";
        case ApproxStatus::infeasible: return "infeasible";
        case ApproxStatus::unsupported_structure: return "unsupported-structure";
        case ApproxStatus::state_limit: return "state-limit";
    }
    return "unknown";
}

}  // namespace coordmp
