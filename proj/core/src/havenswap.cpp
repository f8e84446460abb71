#include "coordmp/havenswap.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "coordmp/error.hpp"

namespace coordmp {

namespace {

struct Tree {
    Vertex root = kNoVertex;
    std::vector<Vertex> parent;  // indexed by vertex; kNoVertex outside the tree
    std::vector<int> depth;      // -1 outside the tree
    std::vector<Vertex> order;   // BFS order, root first

    bool has(Vertex v) const { return depth[static_cast<std::size_t>(v)] >= 0; }
};

Tree bfs_tree(const Graph& g, Vertex root, const std::vector<Vertex>& vertices) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> allowed(n, false);
    for (Vertex v : vertices) allowed[static_cast<std::size_t>(v)] = true;
    Tree t;
    t.root = root;
    t.parent.assign(n, kNoVertex);
    t.depth.assign(n, -1);
    t.depth[static_cast<std::size_t>(root)] = 0;
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        t.order.push_back(u);
        for (Vertex w : g.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            if (!allowed[wi] || t.depth[wi] >= 0) continue;
            t.depth[wi] = t.depth[static_cast<std::size_t>(u)] + 1;
            t.parent[wi] = u;
            queue.push_back(w);
        }
    }
    // BFS order from a queue is already sorted by depth; stabilise ties by id.
    std::stable_sort(t.order.begin(), t.order.end(), [&](Vertex a, Vertex b) {
        auto da = t.depth[static_cast<std::size_t>(a)];
        auto db = t.depth[static_cast<std::size_t>(b)];
        return da != db ? da < db : a < b;
    });
    return t;
}

std::vector<Vertex> intersect(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Brings any configuration to a canonical one that depends only on the robot set.
class Canonicalizer {
public:
    Canonicalizer(const Graph& g, const Haven& h)
        : g_(g),
          h_(h),
          t1_(bfs_tree(g, h.center, intersect(h.members, h.c1))),
          t2_(bfs_tree(g, h.center, intersect(h.members, h.c2))),
          occ_(g.vertex_count(), -1) {}

    MoveSequence run(const HavenConfiguration& config) {
        moves_.clear();
        std::fill(occ_.begin(), occ_.end(), -1);
        pos_.clear();
        for (auto [r, v] : config.placement) place(r, v);
        evacuate();
        settle();
        return moves_;
    }

private:
    void place(RobotId r, Vertex v) {
        pos_[r] = v;
        occ_[static_cast<std::size_t>(v)] = r;
    }

    RobotId at(Vertex v) const { return occ_[static_cast<std::size_t>(v)]; }

    void step(RobotId r, Vertex to, MoveSequence* log = nullptr) {
        const Vertex from = pos_.at(r);
        if (!g_.has_edge(from, to) || at(to) != -1) {
            throw std::logic_error("haven reconfiguration produced an illegal move");
        }
        occ_[static_cast<std::size_t>(from)] = -1;
        place(r, to);
        moves_.push_back(Move{r, from, to});
        if (log) log->push_back(moves_.back());
    }

    void replay_reversed(const MoveSequence& log) {
        for (auto it = log.rbegin(); it != log.rend(); ++it) step(it->robot, it->from);
    }

    // Root-to-v path in the tree, root first.
    static std::vector<Vertex> path_from_root(const Tree& t, Vertex v) {
        std::vector<Vertex> path;
        for (Vertex u = v; u != kNoVertex; u = t.parent[static_cast<std::size_t>(u)]) path.push_back(u);
        std::reverse(path.begin(), path.end());
        return path;
    }

    // Moves the robot at the root one level down, shifting the chain ahead of it toward
    // the shallowest free tree vertex.
    void push_down(const Tree& t, MoveSequence* log = nullptr) {
        Vertex target = kNoVertex;
        for (Vertex v : t.order) {
            if (v != t.root && at(v) == -1) {
                target = v;
                break;
            }
        }
        if (target == kNoVertex) throw std::logic_error("haven tree has no free vertex");
        auto path = path_from_root(t, target);
        for (std::size_t j = path.size() - 1; j-- > 0;) {
            if (RobotId r = at(path[j]); r != -1) step(r, path[j + 1], log);
        }
    }

    void pull_up(const Tree& t, RobotId r, MoveSequence* log = nullptr) {
        while (pos_.at(r) != t.root) step(r, t.parent[static_cast<std::size_t>(pos_.at(r))], log);
    }

    void evacuate() {
        const Vertex w = h_.center;
        if (at(w) != -1) push_down(t1_);
        std::vector<Vertex> t2_occupied;
        for (Vertex v : t2_.order) {
            if (v != w && at(v) != -1) t2_occupied.push_back(v);
        }
        for (Vertex v : t2_occupied) {
            pull_up(t2_, at(v));
            push_down(t1_);
        }
        if (RobotId r = at(h_.x); r != -1) {
            step(r, w);
            push_down(t1_);
        }
    }

    void settle() {
        const Vertex w = h_.center;
        std::vector<RobotId> robots;
        for (const auto& [r, v] : pos_) robots.push_back(r);
        std::vector<Vertex> slots;
        for (Vertex v : t2_.order) {
            if (v != w && slots.size() < robots.size()) slots.push_back(v);
        }
        if (slots.size() < robots.size()) throw std::logic_error("haven witness too small");
        for (std::size_t i = robots.size(); i-- > 0;) {
            const RobotId r = robots[i];
            // Robots between r and the center step aside into T2 and come back later.
            auto path = path_from_root(t1_, pos_.at(r));
            MoveSequence aside;
            for (std::size_t j = 1; j + 1 < path.size(); ++j) {
                if (RobotId b = at(path[j]); b != -1) {
                    pull_up(t1_, b, &aside);
                    push_down(t2_, &aside);
                }
            }
            pull_up(t1_, r);
            step(r, h_.x);
            replay_reversed(aside);
            step(r, w);
            for (Vertex v : path_from_root(t2_, slots[i])) {
                if (v != w) step(r, v);
            }
        }
    }

    const Graph& g_;
    const Haven& h_;
    Tree t1_;
    Tree t2_;
    std::vector<RobotId> occ_;
    std::map<RobotId, Vertex> pos_;
    MoveSequence moves_;
};

void check_configuration(const Haven& h, const HavenConfiguration& c, const char* which) {
    std::set<Vertex> used;
    for (auto [r, v] : c.placement) {
        if (!h.contains(v)) {
            throw InputError(std::string(which) + " places robot " + std::to_string(r) + " outside the haven");
        }
        if (!used.insert(v).second) throw InputError(std::string(which) + " is not injective");
    }
    if (c.placement.size() > static_cast<std::size_t>(h.k)) {
        throw InputError(std::string(which) + " has more than k robots");
    }
}

}  // namespace

MoveSequence cancel_backtracks(MoveSequence moves) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < moves.size() && !changed; ++i) {
            const Move& m = moves[i];
            for (std::size_t j = i + 1; j < moves.size(); ++j) {
                const Move& o = moves[j];
                if (o.robot == m.robot) {
                    if (o.from == m.to && o.to == m.from) {
                        moves.erase(moves.begin() + static_cast<std::ptrdiff_t>(j));
                        moves.erase(moves.begin() + static_cast<std::ptrdiff_t>(i));
                        changed = true;
                    }
                    break;
                }
                if (o.from == m.from || o.to == m.from || o.from == m.to || o.to == m.to) break;
            }
        }
    }
    return moves;
}

MoveSequence haven_swap(const Graph& g, const Haven& h, const HavenConfiguration& from,
                        const HavenConfiguration& to) {
    if (auto defect = haven_defect(g, h)) throw InputError("malformed haven: " + *defect);
    check_configuration(h, from, "source configuration");
    check_configuration(h, to, "target configuration");
    for (auto it = from.placement.begin(), jt = to.placement.begin();
         it != from.placement.end() || jt != to.placement.end(); ++it, ++jt) {
        if (it == from.placement.end() || jt == to.placement.end() || it->first != jt->first) {
            throw InputError("configurations place different robot sets");
        }
    }
    if (from == to) return {};
    Canonicalizer canon(g, h);
    MoveSequence out = canon.run(from);
    MoveSequence back = canon.run(to);
    for (auto it = back.rbegin(); it != back.rend(); ++it) out.push_back(it->reversed());
    return cancel_backtracks(std::move(out));
}

HavenConfiguration apply_moves(const Graph& g, const Haven* h, HavenConfiguration config,
                               std::span<const Move> moves) {
    std::map<Vertex, RobotId> occ;
    for (auto [r, v] : config.placement) occ[v] = r;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        const Move& m = moves[i];
        const std::string where = "move " + std::to_string(i) + ": ";
        auto it = config.placement.find(m.robot);
        if (it == config.placement.end() || it->second != m.from) {
            throw InputError(where + "robot " + std::to_string(m.robot) + " is not at " + std::to_string(m.from));
        }
        if (!g.has_edge(m.from, m.to)) throw InputError(where + "not an edge");
        if (occ.count(m.to)) throw InputError(where + "target occupied");
        if (h && !h->contains(m.to)) throw InputError(where + "leaves the haven");
        occ.erase(m.from);
        occ[m.to] = m.robot;
        it->second = m.to;
    }
    return config;
}

void append_moves(Schedule& schedule, std::span<const Move> moves) {
    if (moves.empty()) return;
    std::vector<Vertex> pos = schedule.positions_at(schedule.horizon());
    for (const Move& m : moves) {
        auto& slot = pos.at(static_cast<std::size_t>(m.robot));
        if (slot != m.from) throw InputError("move does not start at the robot's position");
        slot = m.to;
        schedule.push_step(pos);
    }
}

Schedule normalize_around_haven(const Instance& instance, const Schedule& schedule, const Haven& h) {
    const Graph& g = instance.graph();
    if (auto v = validate_schedule(instance, schedule); !v.ok()) {
        throw InputError("invalid schedule: " + v.message);
    }
    if (auto defect = haven_defect(g, h)) throw InputError("malformed haven: " + *defect);
    const std::size_t k = schedule.robot_count();
    const std::size_t t = schedule.horizon();
    auto inside = [&](Vertex v) { return h.contains(v); };

    // First step a robot is inside and the last step before it leaves for good.
    constexpr std::size_t kNever = static_cast<std::size_t>(-1);
    std::vector<std::size_t> first(k, kNever);
    std::vector<std::size_t> last(k, kNever);
    for (std::size_t i = 0; i < k; ++i) {
        const Route& r = schedule.routes()[i];
        for (std::size_t s = 0; s <= t; ++s) {
            if (inside(r[s])) {
                if (first[i] == kNever) first[i] = s;
                last[i] = s;
            }
        }
    }

    Schedule out = Schedule::stationary(schedule.positions_at(0));
    std::vector<Vertex> pos = schedule.positions_at(0);
    std::vector<bool> absorbed(k, false);
    for (std::size_t i = 0; i < k; ++i) absorbed[i] = first[i] == 0;

    // Moves absorbed robots so that `pinned` robots sit on their vertices and `clear`
    // vertices are free; the rest keep their places when possible.
    auto reconfigure = [&](const std::map<RobotId, Vertex>& pinned, const std::set<Vertex>& clear) {
        HavenConfiguration from;
        HavenConfiguration to;
        std::set<Vertex> taken;
        for (auto [r, v] : pinned) taken.insert(v);
        std::vector<RobotId> movers;
        for (std::size_t i = 0; i < k; ++i) {
            if (!absorbed[i]) continue;
            const auto r = static_cast<RobotId>(i);
            from.placement[r] = pos[i];
            if (auto p = pinned.find(r); p != pinned.end()) {
                to.placement[r] = p->second;
            } else {
                movers.push_back(r);
            }
        }
        std::vector<RobotId> displaced;
        for (RobotId r : movers) {
            Vertex v = pos[static_cast<std::size_t>(r)];
            if (!taken.count(v) && !clear.count(v)) {
                to.placement[r] = v;
                taken.insert(v);
            } else {
                displaced.push_back(r);
            }
        }
        for (RobotId r : displaced) {
            for (Vertex v : h.members) {
                if (!taken.count(v) && !clear.count(v)) {
                    to.placement[r] = v;
                    taken.insert(v);
                    break;
                }
            }
        }
        if (from == to) return;
        MoveSequence moves = haven_swap(g, h, from, to);
        append_moves(out, moves);
        for (const Move& m : moves) pos[static_cast<std::size_t>(m.robot)] = m.to;
    };

    for (std::size_t s = 1; s <= t; ++s) {
        std::map<RobotId, Vertex> pinned;
        std::set<Vertex> clear;
        std::vector<std::size_t> entering;
        std::vector<std::size_t> exiting;
        for (std::size_t i = 0; i < k; ++i) {
            const Route& r = schedule.routes()[i];
            if (first[i] == s) {
                entering.push_back(i);
                clear.insert(r[s]);
            }
            if (absorbed[i] && last[i] == s - 1 && last[i] != t) {
                exiting.push_back(i);
                pinned[static_cast<RobotId>(i)] = r[s - 1];
            }
        }
        if (!entering.empty() || !exiting.empty()) {
            // A vacating exiter may hand its cell to an enterer in the same step.
            for (auto [r, v] : pinned) clear.erase(v);
            reconfigure(pinned, clear);
        }
        for (std::size_t i = 0; i < k; ++i) {
            const Route& r = schedule.routes()[i];
            const bool exits = absorbed[i] && last[i] == s - 1;
            if (!absorbed[i] || exits) pos[i] = r[s];
        }
        for (std::size_t i : entering) absorbed[i] = true;
        for (std::size_t i : exiting) absorbed[i] = false;
        out.push_step(pos);
    }

    // Robots that finish inside end where the original schedule leaves them.
    std::map<RobotId, Vertex> pinned;
    for (std::size_t i = 0; i < k; ++i) {
        if (absorbed[i]) pinned[static_cast<RobotId>(i)] = schedule.routes()[i][t];
    }
    reconfigure(pinned, {});
    return out;
}

}  // namespace coordmp
