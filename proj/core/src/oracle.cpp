#include "coordmp/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <queue>
#include <unordered_map>

#include "coordmp/error.hpp"

namespace coordmp {

SearchLimits SearchLimits::defaults() {
    SearchLimits l;
    if (const char* cap = std::getenv("COORDMP_STATE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(cap, &end, 10);
        if (end != cap && *end == '\0' && v > 0) l.max_states = static_cast<std::size_t>(v);
    }
    return l;
}

MotionDomainSet MotionDomainSet::full(const Instance& instance) {
    std::vector<Vertex> all(instance.graph().vertex_count());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
    return MotionDomainSet{std::vector<std::vector<Vertex>>(instance.robot_count(), all)};
}

namespace {

using Key = std::uint64_t;

struct Transit {
    Vertex from;
    Vertex to;
    std::vector<Vertex> path;  // excludes `from`, ends with `to`
};

// Configuration graph over injective k-tuples, optionally restricted per robot and
// optionally compressed onto critical vertices.
class ConfigSpace {
public:
    ConfigSpace(const Instance& instance, std::vector<std::vector<bool>> allowed,
                std::vector<Transit> transits)
        : g_(instance.graph()),
          k_(instance.robot_count()),
          n_(instance.graph().vertex_count()),
          allowed_(std::move(allowed)),
          transits_(std::move(transits)),
          transits_from_(n_) {
        long double span = 1;
        for (std::size_t i = 0; i < k_; ++i) span *= static_cast<long double>(std::max<std::size_t>(n_, 1));
        if (span > 9.0e18L) throw LimitError("configuration space too large to encode");
        for (std::size_t t = 0; t < transits_.size(); ++t) {
            transits_from_[static_cast<std::size_t>(transits_[t].from)].push_back(static_cast<int>(t));
        }
        for (const Robot& r : instance.robots()) goals_.push_back(r.goal);
        occupant_.assign(n_, -1);
    }

    std::size_t k() const { return k_; }

    Key encode(const std::vector<Vertex>& pos) const {
        Key key = 0;
        for (Vertex v : pos) key = key * n_ + static_cast<Key>(v);
        return key;
    }

    std::vector<Vertex> decode(Key key) const {
        std::vector<Vertex> pos(k_);
        for (std::size_t i = k_; i-- > 0;) {
            pos[i] = static_cast<Vertex>(key % n_);
            key /= n_;
        }
        return pos;
    }

    bool is_goal(const std::vector<Vertex>& pos) const {
        for (std::size_t i = 0; i < k_; ++i) {
            if (goals_[i] && pos[i] != *goals_[i]) return false;
        }
        return true;
    }

    const Transit& transit(int id) const { return transits_[static_cast<std::size_t>(id)]; }

    // Calls emit(next, weight, transit_id) for every successor; transit_id is -1 for a
    // one-step joint move.
    template <class Emit>
    void successors(const std::vector<Vertex>& pos, Emit&& emit) {
        for (std::size_t i = 0; i < k_; ++i) occupant_[static_cast<std::size_t>(pos[i])] = static_cast<int>(i);
        next_ = pos;
        claimed_.assign(n_, false);
        joint(pos, 0, 0, emit);
        for (std::size_t i = 0; i < k_; ++i) {
            for (int t : transits_from_[static_cast<std::size_t>(pos[i])]) {
                const Transit& tr = transits_[static_cast<std::size_t>(t)];
                if (!allowed_[i][static_cast<std::size_t>(tr.to)]) continue;
                if (occupant_[static_cast<std::size_t>(tr.to)] != -1) continue;
                std::vector<Vertex> next = pos;
                next[i] = tr.to;
                emit(next, static_cast<Energy>(tr.path.size()), t);
            }
        }
        for (std::size_t i = 0; i < k_; ++i) occupant_[static_cast<std::size_t>(pos[i])] = -1;
    }

private:
    template <class Emit>
    void joint(const std::vector<Vertex>& pos, std::size_t i, Energy movers, Emit& emit) {
        if (i == k_) {
            if (movers > 0) emit(next_, movers, -1);
            return;
        }
        const Vertex cur = pos[i];
        // Staying.
        if (!claimed_[static_cast<std::size_t>(cur)]) {
            claimed_[static_cast<std::size_t>(cur)] = true;
            next_[i] = cur;
            joint(pos, i + 1, movers, emit);
            claimed_[static_cast<std::size_t>(cur)] = false;
        }
        for (Vertex w : g_.neighbors(cur)) {
            auto wi = static_cast<std::size_t>(w);
            if (!allowed_[i][wi] || claimed_[wi]) continue;
            const int occ = occupant_[wi];
            // Swap with an already assigned robot that moves onto our vertex.
            if (occ != -1 && static_cast<std::size_t>(occ) < i && next_[static_cast<std::size_t>(occ)] == cur) continue;
            // An occupant processed later must leave w; a stayer claims w and is rejected then.
            claimed_[wi] = true;
            next_[i] = w;
            joint(pos, i + 1, movers + 1, emit);
            claimed_[wi] = false;
        }
        next_[i] = cur;
    }

    const Graph& g_;
    std::size_t k_;
    std::size_t n_;
    std::vector<std::vector<bool>> allowed_;
    std::vector<Transit> transits_;
    std::vector<std::vector<int>> transits_from_;
    std::vector<std::optional<Vertex>> goals_;
    std::vector<int> occupant_;
    std::vector<bool> claimed_;
    std::vector<Vertex> next_;
};

struct Node {
    Energy cost = 0;
    Key parent = 0;
    int transit = -1;
    std::uint32_t depth = 0;
    bool closed = false;
};

Schedule rebuild(ConfigSpace& space, const std::unordered_map<Key, Node>& nodes, Key start, Key goal) {
    std::vector<Key> chain;
    for (Key cur = goal; cur != start; cur = nodes.at(cur).parent) chain.push_back(cur);
    std::reverse(chain.begin(), chain.end());
    Schedule out = Schedule::stationary(space.decode(start));
    std::vector<Vertex> pos = space.decode(start);
    for (Key key : chain) {
        const Node& node = nodes.at(key);
        std::vector<Vertex> next = space.decode(key);
        if (node.transit < 0) {
            out.push_step(next);
        } else {
            const Transit& tr = space.transit(node.transit);
            std::size_t mover = 0;
            while (pos[mover] == next[mover]) ++mover;
            for (Vertex v : tr.path) {
                pos[mover] = v;
                out.push_step(pos);
            }
        }
        pos = std::move(next);
    }
    return out;
}

struct Outcome {
    enum class Kind { found, exhausted, limit } kind;
    std::optional<Schedule> schedule;
    Energy cost = 0;
    std::size_t expanded = 0;
};

Outcome dijkstra(ConfigSpace& space, const std::vector<Vertex>& start_pos, const SearchLimits& limits,
                 std::optional<Energy> cap = std::nullopt) {
    std::unordered_map<Key, Node> nodes;
    using Item = std::pair<Energy, Key>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    const Key start = space.encode(start_pos);
    nodes.emplace(start, Node{});
    open.emplace(0, start);
    Outcome out{Outcome::Kind::exhausted, std::nullopt, 0, 0};
    bool truncated = false;
    while (!open.empty()) {
        auto [cost, key] = open.top();
        open.pop();
        Node& node = nodes.at(key);
        if (node.closed || node.cost != cost) continue;
        node.closed = true;
        ++out.expanded;
        std::vector<Vertex> pos = space.decode(key);
        if (space.is_goal(pos)) {
            out.kind = Outcome::Kind::found;
            out.cost = cost;
            out.schedule = rebuild(space, nodes, start, key);
            return out;
        }
        const std::uint32_t depth = node.depth;
        if (depth >= limits.max_horizon) {
            truncated = true;
            continue;
        }
        bool overflow = false;
        space.successors(pos, [&](const std::vector<Vertex>& next, Energy w, int transit) {
            if (overflow || (cap && cost + w > *cap)) return;
            Key nk = space.encode(next);
            auto [it, fresh] = nodes.try_emplace(nk);
            Node& nn = it->second;
            if (fresh) {
                if (nodes.size() > limits.max_states) {
                    overflow = true;
                    return;
                }
            } else if (nn.closed || nn.cost <= cost + w) {
                return;
            }
            nn.cost = cost + w;
            nn.parent = key;
            nn.transit = transit;
            nn.depth = depth + 1;
            open.emplace(nn.cost, nk);
        });
        if (overflow) {
            out.kind = Outcome::Kind::limit;
            return out;
        }
    }
    if (truncated) out.kind = Outcome::Kind::limit;
    return out;
}

std::vector<std::vector<bool>> full_masks(const Instance& instance) {
    return std::vector<std::vector<bool>>(instance.robot_count(),
                                          std::vector<bool>(instance.graph().vertex_count(), true));
}

std::vector<std::vector<bool>> domain_masks(const Instance& instance, const MotionDomainSet& domains) {
    const std::size_t n = instance.graph().vertex_count();
    if (domains.allowed.size() != instance.robot_count()) {
        throw InputError("domain count differs from robot count");
    }
    std::vector<std::vector<bool>> masks(instance.robot_count(), std::vector<bool>(n, false));
    for (std::size_t i = 0; i < masks.size(); ++i) {
        if (domains.allowed[i].empty()) throw InputError("empty domain for robot " + std::to_string(i));
        for (Vertex v : domains.allowed[i]) {
            if (!instance.graph().valid(v)) throw InputError("domain vertex out of range");
            masks[i][static_cast<std::size_t>(v)] = true;
        }
        const Robot& r = instance.robots()[i];
        if (!masks[i][static_cast<std::size_t>(r.start)]) {
            throw InputError("start of robot " + std::to_string(i) + " outside its domain");
        }
        if (r.goal && !masks[i][static_cast<std::size_t>(*r.goal)]) {
            throw InputError("goal of robot " + std::to_string(i) + " outside its domain");
        }
    }
    return masks;
}

SearchResult finish(const Instance& instance, Outcome outcome) {
    SearchResult res;
    res.states_expanded = outcome.expanded;
    switch (outcome.kind) {
        case Outcome::Kind::limit:
            res.status = SearchStatus::state_limit;
            return res;
        case Outcome::Kind::exhausted:
            res.status = SearchStatus::infeasible;
            return res;
        case Outcome::Kind::found:
            break;
    }
    res.energy = outcome.cost;
    res.schedule = std::move(outcome.schedule);
    const bool over = instance.budget() && outcome.cost > *instance.budget();
    res.status = over ? SearchStatus::budget_exceeded : SearchStatus::optimal;
    return res;
}

SearchResult run(const Instance& instance, std::vector<std::vector<bool>> masks,
                 std::vector<Transit> transits, const SearchLimits& limits) {
    if (instance.robot_count() == 0) {
        SearchResult res;
        res.status = SearchStatus::optimal;
        res.energy = 0;
        res.schedule = Schedule::stationary({});
        return res;
    }
    // Separate "no schedule at all" from "over budget" before the weighted search.
    FeasibilityResult feas = check_feasible(instance, limits);
    if (feas.status == Feasibility::infeasible) {
        SearchResult res;
        res.status = SearchStatus::infeasible;
        res.states_expanded = feas.states_expanded;
        return res;
    }
    if (feas.status == Feasibility::state_limit) {
        SearchResult res;
        res.status = SearchStatus::state_limit;
        res.states_expanded = feas.states_expanded;
        return res;
    }
    ConfigSpace space(instance, std::move(masks), std::move(transits));
    return finish(instance, dijkstra(space, instance.starts(), limits));
}

}  // namespace

SearchResult solve_exact(const Instance& instance, const SearchLimits& limits) {
    return run(instance, full_masks(instance), {}, limits);
}

SearchResult solve_restricted(const Instance& instance, const MotionDomainSet& domains,
                              const SearchLimits& limits) {
    auto masks = domain_masks(instance, domains);
    if (instance.robot_count() == 0) return run(instance, {}, {}, limits);
    ConfigSpace space(instance, std::move(masks), {});
    Outcome probe = dijkstra(space, instance.starts(), limits);
    if (probe.kind == Outcome::Kind::limit) return finish(instance, std::move(probe));
    // With restricted domains the weighted search itself decides reachability: an
    // exhausted frontier means no schedule inside the domains exists.
    return finish(instance, std::move(probe));
}

SearchResult solve_within_budget(const Instance& instance, const SearchLimits& limits) {
    if (!instance.budget()) throw InputError("budgeted search needs an instance budget");
    if (instance.robot_count() == 0) return run(instance, {}, {}, limits);
    ConfigSpace space(instance, full_masks(instance), {});
    Outcome outcome = dijkstra(space, instance.starts(), limits, *instance.budget());
    if (outcome.kind == Outcome::Kind::exhausted) {
        SearchResult res;
        res.status = SearchStatus::budget_exceeded;
        res.states_expanded = outcome.expanded;
        return res;
    }
    return finish(instance, std::move(outcome));
}

std::vector<bool> critical_vertices(const Instance& instance) {
    const Graph& g = instance.graph();
    std::vector<Vertex> seeds = instance.terminals();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(static_cast<Vertex>(v)) != 2) seeds.push_back(static_cast<Vertex>(v));
    }
    const int k = static_cast<int>(instance.robot_count());
    auto dist = bfs_distances(g, std::span<const Vertex>(seeds));
    std::vector<bool> critical(g.vertex_count());
    for (std::size_t v = 0; v < critical.size(); ++v) {
        critical[v] = dist[v] != kUnreachable && dist[v] <= k;
    }
    return critical;
}

SearchResult solve_critical(const Instance& instance, const SearchLimits& limits) {
    const Graph& g = instance.graph();
    const std::size_t n = g.vertex_count();
    std::vector<bool> critical = critical_vertices(instance);
    // Every non-critical vertex has degree 2, so non-critical runs are simple paths
    // whose two outside neighbours are critical.
    std::vector<Transit> transits;
    std::vector<bool> seen(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        if (critical[s] || seen[s]) continue;
        // Collect the non-critical component containing s and its critical attachments.
        std::vector<Vertex> comp{static_cast<Vertex>(s)};
        seen[s] = true;
        std::vector<Edge> attach;  // (run vertex, critical neighbour)
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (Vertex w : g.neighbors(comp[i])) {
                auto wi = static_cast<std::size_t>(w);
                if (critical[wi]) {
                    attach.emplace_back(comp[i], w);
                } else if (!seen[wi]) {
                    seen[wi] = true;
                    comp.push_back(w);
                }
            }
        }
        if (attach.size() != 2 || attach[0].second == attach[1].second) continue;
        // Walk from the first attachment through the run.
        std::vector<Vertex> path;
        Vertex prev = attach[0].second;
        Vertex cur = attach[0].first;
        while (true) {
            path.push_back(cur);
            Vertex step = kNoVertex;
            for (Vertex w : g.neighbors(cur)) {
                if (w != prev && !critical[static_cast<std::size_t>(w)]) step = w;
            }
            if (step == kNoVertex) break;
            prev = cur;
            cur = step;
        }
        const Vertex a = attach[0].second;
        const Vertex b = attach[1].second;
        Transit forward{a, b, path};
        forward.path.push_back(b);
        Transit backward{b, a, std::vector<Vertex>(path.rbegin(), path.rend())};
        backward.path.push_back(a);
        transits.push_back(std::move(forward));
        transits.push_back(std::move(backward));
    }
    std::vector<std::vector<bool>> masks(instance.robot_count(), critical);
    return run(instance, std::move(masks), std::move(transits), limits);
}

FeasibilityResult check_feasible(const Instance& instance, const SearchLimits& limits) {
    FeasibilityResult res;
    if (instance.destination_robots().empty()) {
        res.status = Feasibility::feasible;
        res.witness = Schedule::stationary(instance.starts());
        return res;
    }
    ConfigSpace space(instance, full_masks(instance), {});
    std::unordered_map<Key, Node> nodes;
    std::deque<Key> queue;
    const Key start = space.encode(instance.starts());
    nodes.emplace(start, Node{});
    queue.push_back(start);
    while (!queue.empty()) {
        Key key = queue.front();
        queue.pop_front();
        ++res.states_expanded;
        std::vector<Vertex> pos = space.decode(key);
        if (space.is_goal(pos)) {
            res.status = Feasibility::feasible;
            res.witness = rebuild(space, nodes, start, key);
            return res;
        }
        bool overflow = false;
        space.successors(pos, [&](const std::vector<Vertex>& next, Energy, int transit) {
            if (overflow) return;
            Key nk = space.encode(next);
            auto [it, fresh] = nodes.try_emplace(nk);
            if (!fresh) return;
            if (nodes.size() > limits.max_states) {
                overflow = true;
                return;
            }
            it->second.parent = key;
            it->second.transit = transit;
            queue.push_back(nk);
        });
        if (overflow) {
            res.status = Feasibility::state_limit;
            return res;
        }
    }
    res.status = Feasibility::infeasible;
    return res;
}

std::size_t max_visit_count(const Schedule& schedule) {
    std::unordered_map<Vertex, std::size_t> entries;
    std::size_t best = 0;
    for (const Route& r : schedule.routes()) {
        for (std::size_t j = 0; j + 1 < r.size(); ++j) {
            if (r[j] != r[j + 1]) best = std::max(best, ++entries[r[j + 1]]);
        }
    }
    return best;
}

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::optimal: return "optimal";
        case SearchStatus::infeasible: return "infeasible";
        case SearchStatus::budget_exceeded: return "budget-exceeded";
        case SearchStatus::state_limit: return "state-limit";
    }
    return "unknown";
}

std::string to_string(Feasibility f) {
    switch (f) {
        case Feasibility::feasible: return "feasible";
        case Feasibility::infeasible: return "infeasible";
        case Feasibility::state_limit: return "state-limit";
    }
    return "unknown";
}

}  // namespace coordmp
