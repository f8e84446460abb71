#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace coordmp {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph on dense ids 0..n-1. Immutable after construction.
class Graph {
public:
    Graph() = default;
    // Throws InputError on self-loops, duplicate edges or out-of-range endpoints.
    Graph(std::size_t vertex_count, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    // Canonical edge list: u < v, sorted lexicographically.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }
    bool has_edge(Vertex u, Vertex v) const;
    bool valid(Vertex v) const noexcept {
        return v >= 0 && static_cast<std::size_t>(v) < adj_.size();
    }

    // Subgraph induced by `keep` (ascending order preserved); new id i maps to keep[i].
    Graph induced(std::span<const Vertex> keep) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
};

inline constexpr int kUnreachable = -1;

// BFS distances from `source`; kUnreachable for other components.
std::vector<int> bfs_distances(const Graph& g, Vertex source);
// BFS restricted to vertices with allowed[v] true. Source must be allowed.
std::vector<int> bfs_distances(const Graph& g, Vertex source, const std::vector<bool>& allowed);
// Multi-source BFS.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources);

std::optional<int> shortest_path_distance(const Graph& g, Vertex u, Vertex v);

// Lexicographically smallest shortest path (as a vertex sequence u..v), restricted to
// allowed vertices when a mask is given. Empty when unreachable.
std::vector<Vertex> shortest_path(const Graph& g, Vertex u, Vertex v,
                                  const std::vector<bool>* allowed = nullptr);

// Component label per vertex; labels 0, 1, ... in order of each component's smallest vertex.
std::vector<int> connected_components(const Graph& g);
bool is_connected(const Graph& g);

}  // namespace coordmp
