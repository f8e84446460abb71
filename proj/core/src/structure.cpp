#include "coordmp/structure.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "coordmp/error.hpp"

namespace coordmp {

namespace {

using VertexSet = std::vector<Vertex>;  // sorted

std::vector<bool> mask_of(std::size_t n, const VertexSet& s) {
    std::vector<bool> m(n, false);
    for (Vertex v : s) m[static_cast<std::size_t>(v)] = true;
    return m;
}

bool contains_sorted(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

// Connected vertex sets of exactly `size` vertices in the graph restricted to `allowed`,
// each containing at least one seed. Sorted ascending lexicographically.
std::set<VertexSet> connected_sets(const Graph& g, const std::vector<bool>& allowed,
                                   const VertexSet& seeds, int size) {
    std::set<VertexSet> level;
    for (Vertex s : seeds) {
        if (allowed[static_cast<std::size_t>(s)]) level.insert(VertexSet{s});
    }
    for (int grown = 1; grown < size && !level.empty(); ++grown) {
        std::set<VertexSet> next;
        for (const VertexSet& set : level) {
            for (Vertex u : set) {
                for (Vertex w : g.neighbors(u)) {
                    if (!allowed[static_cast<std::size_t>(w)] || contains_sorted(set, w)) continue;
                    VertexSet bigger = set;
                    bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), w), w);
                    next.insert(std::move(bigger));
                }
            }
        }
        level = std::move(next);
    }
    return level;
}

// Vertices within distance `radius` of `root` inside G[set].
VertexSet ball_within(const Graph& g, Vertex root, const VertexSet& set, int radius) {
    auto dist = bfs_distances(g, root, mask_of(g.vertex_count(), set));
    VertexSet out;
    for (Vertex v : set) {
        int d = dist[static_cast<std::size_t>(v)];
        if (d != kUnreachable && d <= radius) out.push_back(v);
    }
    return out;
}

VertexSet members_of(const Graph& g, const Haven& h) {
    VertexSet out = ball_within(g, h.center, h.c1, h.k);
    VertexSet b2 = ball_within(g, h.center, h.c2, h.k);
    out.insert(out.end(), b2.begin(), b2.end());
    out.push_back(h.x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool induces_connected(const Graph& g, const VertexSet& set) {
    if (set.empty()) return false;
    auto dist = bfs_distances(g, set.front(), mask_of(g.vertex_count(), set));
    return std::all_of(set.begin(), set.end(),
                       [&](Vertex v) { return dist[static_cast<std::size_t>(v)] != kUnreachable; });
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Vertices reachable from `from` while avoiding `blocked`.
VertexSet reach_avoiding(const Graph& g, Vertex from, const std::vector<bool>& blocked) {
    std::vector<bool> allowed(g.vertex_count());
    for (std::size_t i = 0; i < allowed.size(); ++i) allowed[i] = !blocked[i];
    auto dist = bfs_distances(g, from, allowed);
    VertexSet out;
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] != kUnreachable) out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

VertexSet component_of(const Graph& g, Vertex v) {
    return reach_avoiding(g, v, std::vector<bool>(g.vertex_count(), false));
}

std::vector<TwoPath> two_paths_in(const Graph& g, const VertexSet& comp) {
    std::vector<TwoPath> out;
    std::vector<bool> seen(g.vertex_count(), false);
    for (Vertex v : comp) {
        if (g.degree(v) != 2 || seen[static_cast<std::size_t>(v)]) continue;
        TwoPath p = two_path_around(g, v);
        for (Vertex u : p.path) seen[static_cast<std::size_t>(u)] = true;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

bool Haven::contains(Vertex v) const { return contains_sorted(members, v); }

std::optional<std::string> haven_defect(const Graph& g, const Haven& h) {
    if (!g.valid(h.center) || !g.valid(h.x)) return "center or x out of range";
    for (const VertexSet* s : {&h.c1, &h.c2, &h.c3, &h.members}) {
        if (!std::is_sorted(s->begin(), s->end())) return "vertex sets must be sorted";
        for (Vertex v : *s) {
            if (!g.valid(v)) return "vertex out of range";
        }
    }
    if (h.c3 != VertexSet{std::min(h.center, h.x), std::max(h.center, h.x)}) return "c3 must be {center, x}";
    if (!g.has_edge(h.center, h.x)) return "x is not adjacent to the center";
    const auto need = static_cast<std::size_t>(h.k) + 1;
    if (h.c1.size() < need || h.c2.size() < need) return "witness smaller than k+1";
    const VertexSet only{h.center};
    if (intersect(h.c1, h.c2) != only || intersect(h.c1, h.c3) != only || intersect(h.c2, h.c3) != only) {
        return "witnesses must meet pairwise exactly at the center";
    }
    if (!induces_connected(g, h.c1) || !induces_connected(g, h.c2)) return "witness not connected";
    if (h.members != members_of(g, h)) return "members differ from the radius-k neighbourhood";
    return std::nullopt;
}

std::optional<Haven> is_nice(const Graph& g, Vertex w, int k) {
    if (!g.valid(w)) throw InputError("vertex out of range");
    if (k < 0) throw InputError("negative k");
    if (g.degree(w) < (k == 0 ? 1u : 3u)) return std::nullopt;
    const std::size_t n = g.vertex_count();
    for (Vertex x : g.neighbors(w)) {
        std::vector<bool> allowed(n, true);
        allowed[static_cast<std::size_t>(w)] = false;
        allowed[static_cast<std::size_t>(x)] = false;
        VertexSet seeds;
        for (Vertex u : g.neighbors(w)) {
            if (u != x) seeds.push_back(u);
        }
        std::set<VertexSet> candidates;
        if (k == 0) {
            candidates.insert(VertexSet{});
        } else {
            candidates = connected_sets(g, allowed, seeds, k);
        }
        for (const VertexSet& a1 : candidates) {
            std::vector<bool> blocked(n, false);
            blocked[static_cast<std::size_t>(w)] = true;
            blocked[static_cast<std::size_t>(x)] = true;
            for (Vertex u : a1) blocked[static_cast<std::size_t>(u)] = true;
            // Remaining components touching N(w) all hang off w, so their union with w
            // is connected.
            VertexSet rest;
            std::vector<bool> taken(n, false);
            for (Vertex s : seeds) {
                auto si = static_cast<std::size_t>(s);
                if (blocked[si] || taken[si]) continue;
                for (Vertex u : reach_avoiding(g, s, blocked)) {
                    taken[static_cast<std::size_t>(u)] = true;
                    rest.push_back(u);
                }
            }
            if (rest.size() < static_cast<std::size_t>(k)) continue;
            Haven h;
            h.center = w;
            h.x = x;
            h.k = k;
            h.c1 = a1;
            h.c1.push_back(w);
            std::sort(h.c1.begin(), h.c1.end());
            h.c2 = std::move(rest);
            h.c2.push_back(w);
            std::sort(h.c2.begin(), h.c2.end());
            h.c3 = {std::min(w, x), std::max(w, x)};
            h.members = members_of(g, h);
            return h;
        }
    }
    return std::nullopt;
}

NiceMap find_all_nice(const Graph& g, int k) {
    NiceMap out(g.vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = is_nice(g, static_cast<Vertex>(v), k);
    return out;
}

std::vector<Vertex> nice_vertices(const NiceMap& nice) {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < nice.size(); ++v) {
        if (nice[v]) out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

TwoPath two_path_around(const Graph& g, Vertex v) {
    if (!g.valid(v)) throw InputError("vertex out of range");
    if (g.degree(v) != 2) {
        throw InputError("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
                         ", not 2");
    }
    // Walk away from v in one direction until a vertex of degree != 2 (or v again).
    auto walk = [&](Vertex first, std::vector<Vertex>& run) -> Vertex {
        Vertex prev = v;
        Vertex cur = first;
        while (cur != v && g.degree(cur) == 2) {
            run.push_back(cur);
            auto nb = g.neighbors(cur);
            Vertex next = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = next;
        }
        return cur;
    };
    auto nb = g.neighbors(v);
    std::vector<Vertex> left;
    Vertex end_left = walk(nb[0], left);
    TwoPath out;
    if (end_left == v) {
        out.degenerate = true;
        std::vector<Vertex> cycle{v};
        cycle.insert(cycle.end(), left.begin(), left.end());
        auto lowest = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), lowest, cycle.end());
        if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
        out.path = std::move(cycle);
        return out;
    }
    std::vector<Vertex> right;
    Vertex end_right = walk(nb[1], right);
    out.path.assign(left.rbegin(), left.rend());
    out.path.push_back(v);
    out.path.insert(out.path.end(), right.begin(), right.end());
    out.attach_a = end_left;
    out.attach_b = end_right;
    if (end_left > end_right || (end_left == end_right && out.path.front() > out.path.back())) {
        std::reverse(out.path.begin(), out.path.end());
        std::swap(out.attach_a, out.attach_b);
    }
    return out;
}

VertexTypeTag classify_vertex(const Graph& g, Vertex v, int k) {
    return classify_vertex(g, v, k, find_all_nice(g, k));
}

VertexTypeTag classify_vertex(const Graph& g, Vertex v, int k, const NiceMap& nice) {
    if (!g.valid(v)) throw InputError("vertex out of range");
    VertexTypeTag tag;
    if (nice[static_cast<std::size_t>(v)]) {
        tag.type = VertexType::nice;
        return tag;
    }
    const auto dist = bfs_distances(g, v);
    int best = -1;
    for (std::size_t u = 0; u < nice.size(); ++u) {
        if (!nice[u] || dist[u] == kUnreachable || dist[u] > 3 * k) continue;
        if (best == -1 || dist[u] < dist[static_cast<std::size_t>(best)]) best = static_cast<int>(u);
    }
    if (best != -1) {
        tag.type = VertexType::type1;
        tag.near_nice = static_cast<Vertex>(best);
        tag.near_distance = dist[static_cast<std::size_t>(best)];
        return tag;
    }
    auto is_nice_at = [&](Vertex u) { return u != kNoVertex && nice[static_cast<std::size_t>(u)].has_value(); };
    if (g.degree(v) == 2) {
        TwoPath own = two_path_around(g, v);
        if (!own.degenerate && is_nice_at(own.attach_a) && is_nice_at(own.attach_b)) {
            tag.type = VertexType::type2;
            tag.path = std::move(own);
            return tag;
        }
    }
    const VertexSet comp = component_of(g, v);
    const auto pocket_cap = static_cast<std::size_t>(8 * k);
    const std::vector<TwoPath> paths = two_paths_in(g, comp);
    std::optional<VertexTypeTag> type3;
    for (const TwoPath& p : paths) {
        if (p.degenerate || p.attach_a == p.attach_b) continue;
        std::vector<bool> blocked(g.vertex_count(), false);
        for (Vertex u : p.path) blocked[static_cast<std::size_t>(u)] = true;
        const bool on_path = std::find(p.path.begin(), p.path.end(), v) != p.path.end();
        for (auto [a, b] : {std::pair{p.attach_a, p.attach_b}, std::pair{p.attach_b, p.attach_a}}) {
            if (!is_nice_at(a)) continue;
            VertexSet q = reach_avoiding(g, b, blocked);
            if (contains_sorted(q, a) || q.size() > pocket_cap) continue;
            if (!on_path && !contains_sorted(q, v)) continue;
            if (type3 && type3->pocket <= q) continue;
            VertexTypeTag t;
            t.type = VertexType::type3;
            t.path = p;
            t.pocket = std::move(q);
            t.nice_end = a;
            type3 = std::move(t);
        }
    }
    if (type3) return *type3;
    tag.type = VertexType::type4;
    if (comp.size() <= pocket_cap) {
        tag.detail = "component of " + std::to_string(comp.size()) + " vertices";
        return tag;
    }
    for (const TwoPath& p : paths) {
        if (p.degenerate) {
            tag.path = p;
            tag.detail = "cycle of " + std::to_string(p.path.size()) + " degree-2 vertices";
            return tag;
        }
        if (p.attach_a == p.attach_b) continue;
        std::vector<bool> blocked(g.vertex_count(), false);
        for (Vertex u : p.path) blocked[static_cast<std::size_t>(u)] = true;
        VertexSet qa = reach_avoiding(g, p.attach_a, blocked);
        VertexSet qb = reach_avoiding(g, p.attach_b, blocked);
        if (contains_sorted(qa, p.attach_b)) continue;
        if (qa.size() <= pocket_cap && qb.size() <= pocket_cap) {
            tag.path = p;
            tag.detail = "2-path of " + std::to_string(p.path.size()) + " joining pockets of " +
                         std::to_string(qa.size()) + " and " + std::to_string(qb.size()) + " vertices";
            return tag;
        }
    }
    throw std::logic_error("vertex " + std::to_string(v) + " satisfies no classification statement (k=" +
                           std::to_string(k) + ")");
}

std::string to_string(VertexType t) {
    switch (t) {
        case VertexType::nice: return "nice";
        case VertexType::type1: return "type1";
        case VertexType::type2: return "type2";
        case VertexType::type3: return "type3";
        case VertexType::type4: return "type4";
    }
    return "unknown";
}

namespace {

std::string join(const std::vector<Vertex>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(vs[i]);
    }
    return out;
}

}  // namespace

std::string describe(const VertexTypeTag& tag) {
    switch (tag.type) {
        case VertexType::nice: return "-";
        case VertexType::type1:
            return "nice=" + std::to_string(tag.near_nice) + " dist=" + std::to_string(tag.near_distance);
        case VertexType::type2:
            return "path=" + join(tag.path.path) + " ends=" + std::to_string(tag.path.attach_a) + "," +
                   std::to_string(tag.path.attach_b);
        case VertexType::type3:
            return "path=" + join(tag.path.path) + " nice_end=" + std::to_string(tag.nice_end) +
                   " pocket=" + join(tag.pocket);
        case VertexType::type4: return tag.detail;
    }
    return "";
}

std::optional<std::vector<Vertex>> compute_motion_domain(const Instance& instance, RobotId robot,
                                                         int lambda, DomainParams params) {
    return compute_motion_domain(instance, robot, lambda, params,
                                 find_all_nice(instance.graph(), static_cast<int>(instance.robot_count())));
}

std::optional<std::vector<Vertex>> compute_motion_domain(const Instance& instance, RobotId robot,
                                                         int lambda, DomainParams params,
                                                         const NiceMap& nice) {
    if (robot < 0 || static_cast<std::size_t>(robot) >= instance.robot_count()) {
        throw InputError("robot id out of range");
    }
    if (lambda < 0 || params.c1 < 1 || params.c2 < 1) throw InputError("invalid domain parameters");
    const Graph& g = instance.graph();
    const std::size_t n = g.vertex_count();
    const Vertex s = instance.robot(robot).start;
    const auto dist = bfs_distances(g, s);
    bool applicable = false;
    for (std::size_t u = 0; u < n && !applicable; ++u) {
        applicable = nice[u] && dist[u] != kUnreachable && dist[u] <= lambda;
    }
    if (!applicable) return std::nullopt;

    const long long k = static_cast<long long>(instance.robot_count());
    const long long k4 = k * k * k * k;
    const long long depth = std::min<long long>(params.c2 * (lambda * k + k4), static_cast<long long>(n));
    const long long hub = params.c1 * k4 + k + 1;

    std::vector<bool> in(n, false);
    std::vector<long long> level(n, -1);
    std::deque<Vertex> queue{s};
    level[static_cast<std::size_t>(s)] = 0;
    in[static_cast<std::size_t>(s)] = true;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        const auto ui = static_cast<std::size_t>(u);
        if (static_cast<long long>(g.degree(u)) >= hub) {
            long long kept = 0;
            for (Vertex w : g.neighbors(u)) {
                if (kept++ >= hub) break;
                in[static_cast<std::size_t>(w)] = true;
            }
            continue;
        }
        if (level[ui] >= depth) continue;
        for (Vertex w : g.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            in[wi] = true;
            if (level[wi] == -1) {
                level[wi] = level[ui] + 1;
                queue.push_back(w);
            }
        }
    }
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < n; ++v) {
        if (in[v]) out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

}  // namespace coordmp
