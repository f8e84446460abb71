#include "coordmp/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "coordmp/error.hpp"

namespace coordmp {

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : adj_(vertex_count) {
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (!valid(u) || !valid(v)) {
            throw InputError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        }
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw InputError("duplicate edge " + std::to_string(dup->first) + " " +
                         std::to_string(dup->second));
    }
    for (auto [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (!valid(u) || !valid(v)) return false;
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

Graph Graph::induced(std::span<const Vertex> keep) const {
    std::vector<Vertex> index(adj_.size(), kNoVertex);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        index[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);
    }
    std::vector<Edge> sub;
    for (auto [u, v] : edges_) {
        Vertex a = index[static_cast<std::size_t>(u)];
        Vertex b = index[static_cast<std::size_t>(v)];
        if (a != kNoVertex && b != kNoVertex) sub.emplace_back(a, b);
    }
    return Graph(keep.size(), sub);
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
    const Vertex sources[] = {source};
    return bfs_distances(g, std::span<const Vertex>(sources));
}

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
    std::vector<int> dist(g.vertex_count(), kUnreachable);
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        if (dist[static_cast<std::size_t>(s)] == kUnreachable) {
            dist[static_cast<std::size_t>(s)] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source, const std::vector<bool>& allowed) {
    std::vector<int> dist(g.vertex_count(), kUnreachable);
    std::deque<Vertex> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u)) {
            auto wi = static_cast<std::size_t>(w);
            if (allowed[wi] && dist[wi] == kUnreachable) {
                dist[wi] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<int> shortest_path_distance(const Graph& g, Vertex u, Vertex v) {
    if (!g.valid(u) || !g.valid(v)) {
        throw InputError("invalid vertex in distance query");
    }
    int d = bfs_distances(g, u)[static_cast<std::size_t>(v)];
    if (d == kUnreachable) return std::nullopt;
    return d;
}

std::vector<Vertex> shortest_path(const Graph& g, Vertex u, Vertex v,
                                  const std::vector<bool>* allowed) {
    // Distances to the target let us walk forward greedily picking the lowest-id
    // neighbour that stays on a shortest path.
    std::vector<int> to_target = allowed ? bfs_distances(g, v, *allowed) : bfs_distances(g, v);
    if (to_target[static_cast<std::size_t>(u)] == kUnreachable) return {};
    std::vector<Vertex> path{u};
    Vertex cur = u;
    while (cur != v) {
        int want = to_target[static_cast<std::size_t>(cur)] - 1;
        for (Vertex w : g.neighbors(cur)) {
            if (to_target[static_cast<std::size_t>(w)] == want) {
                cur = w;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

std::vector<int> connected_components(const Graph& g) {
    std::vector<int> label(g.vertex_count(), -1);
    int next = 0;
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        if (label[s] != -1) continue;
        std::deque<Vertex> queue{static_cast<Vertex>(s)};
        label[s] = next;
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(u)) {
                if (label[static_cast<std::size_t>(w)] == -1) {
                    label[static_cast<std::size_t>(w)] = next;
                    queue.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

bool is_connected(const Graph& g) {
    auto label = connected_components(g);
    return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

}  // namespace coordmp
