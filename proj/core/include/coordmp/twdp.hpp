#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coordmp/instance.hpp"
#include "coordmp/oracle.hpp"

namespace coordmp {

// ---------------------------------------------------------------------------
// Decompositions

enum class TdKind { leaf, introduce, forget, join, root };

struct TdNode {
    TdKind kind = TdKind::leaf;
    std::vector<Vertex> bag;  // sorted
    std::vector<int> children;
    int parent = -1;
    Vertex vertex = kNoVertex;  // introduced or forgotten vertex
};

struct NiceTreeDecomposition {
    std::vector<TdNode> nodes;
    int root = -1;
    std::vector<Vertex> terminals;  // present in every bag

    int width() const;
    // Width before the terminals were added to every bag.
    int base_width = -1;
};

// Plain tree decomposition (any bag shape), used as input to nice-ification.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> edges;  // parent, child
};

// Optimal decomposition of the graph without the terminals via an exact subset DP,
// made nice, with the terminals added to every bag. Throws LimitError when the graph
// minus terminals has more than `max_exact_vertices` vertices.
NiceTreeDecomposition build_nice_td(const Graph& g, const std::vector<Vertex>& terminals,
                                    std::size_t max_exact_vertices = 22);

// Makes a valid plain decomposition nice and adds the terminals to every bag.
NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td, const std::vector<Vertex>& terminals);

// Exact treewidth and an elimination ordering achieving it.
std::pair<int, std::vector<Vertex>> exact_treewidth(const Graph& g, std::size_t max_exact_vertices = 22);

// First violated axiom, or nullopt.
std::optional<std::string> td_defect(const Graph& g, const TreeDecomposition& td);
std::optional<std::string> nice_td_defect(const Graph& g, const NiceTreeDecomposition& td);

// File format: "td 1", "node <id> <kind> <bag...>", "edge <parent> <child>". Kinds are
// leaf|introduce|forget|join|root for a nice decomposition, or "bag" for plain nodes.
// A plain file is nice-ified and augmented; a nice file is taken as is and validated.
NiceTreeDecomposition parse_td(std::string_view text, const Graph& g, const std::vector<Vertex>& terminals);
std::string render_td(const NiceTreeDecomposition& td);

std::string to_string(TdKind kind);

// ---------------------------------------------------------------------------
// Configuration tuples and sequences

inline constexpr Vertex kUp = -1;    // robot outside the subgraph
inline constexpr Vertex kDown = -2;  // robot strictly below the bag

using ConfigTuple = std::vector<Vertex>;
using CheckpointSequence = std::vector<std::pair<ConfigTuple, ConfigTuple>>;

struct GoodnessReport {
    std::vector<int> violated;  // property numbers, ascending
    bool good() const { return violated.empty(); }
};

// Goodness of checkpoint tuple sequences over `bag`, reported by property number:
//   1 first tuple is the starts; last tuple has goals on goal coordinates, no free robot on a goal
//   2 sequence non-empty
//   3 pairs chain (second tuple of a pair equals the first of the next)
//   4 every pair changes a coordinate touching the bag
//   5 no coordinate jumps between up and down
//   6 no bag vertex held twice in a tuple (also: unreadable entries)
//   7 no robot enters a vertex another robot keeps
//   8 moves follow edges and no edge is crossed both ways
GoodnessReport check_goodness(const CheckpointSequence& seq, const std::vector<Vertex>& bag, const Graph& g,
                              const Instance& instance);
bool is_good_sequence(const CheckpointSequence& seq, const std::vector<Vertex>& bag, const Graph& g,
                      const Instance& instance);

// A sequence stored as its chain of tuples c_0..c_m; the pairs are (c_i, c_{i+1}).
struct Chain {
    std::size_t width = 0;  // robots per tuple
    std::vector<Vertex> cells;

    std::size_t length() const { return width == 0 ? 0 : cells.size() / width; }
    ConfigTuple tuple(std::size_t i) const;
    CheckpointSequence pairs() const;
    bool operator==(const Chain&) const = default;
};

struct ChainHash {
    std::size_t operator()(const Chain& c) const noexcept;
};

struct DpEntry {
    Energy h = 0;  // energy of moves on edges inside the subtree's vertex set
    Energy ext = 0;  // transitions between the bag and the outside
};

using DpTable = std::unordered_map<Chain, DpEntry, ChainHash>;

// ---------------------------------------------------------------------------
// Dynamic program

struct DpContext {
    const Graph* graph = nullptr;
    const Instance* instance = nullptr;
    const NiceTreeDecomposition* td = nullptr;
    Energy rho = 0;                  // drop entries with h + ext > rho
    std::size_t checkpoint_budget = 0;  // maximum number of pairs
    std::size_t max_entries = 4'000'000;
    std::vector<std::vector<bool>> below;  // per node: vertices in or below its bag

    static DpContext make(const Graph& g, const Instance& in, const NiceTreeDecomposition& td, Energy rho,
                          std::size_t budget);
};

DpTable dp_leaf(const DpContext& ctx, int node);
DpTable dp_introduce(const DpContext& ctx, int node, const DpTable& child);
DpTable dp_forget(const DpContext& ctx, int node, const DpTable& child);
DpTable dp_join(const DpContext& ctx, int node, const DpTable& left, const DpTable& right);
// Table at any node by post-order evaluation; joins may evaluate children on
// `threads` workers.
DpTable dp_table(const DpContext& ctx, int node, unsigned threads = 1);

enum class TwdpStatus { optimal, infeasible, budget_exceeded, budget_limited, state_limit };

struct TwdpOptions {
    std::optional<std::size_t> checkpoint_budget;  // default 2k(w+1)*min(visit_cap, 8)
    std::size_t visit_cap = 8;
    std::optional<NiceTreeDecomposition> decomposition;
    unsigned threads = 1;
    SearchLimits limits = SearchLimits::defaults();
};

struct TwdpResult {
    TwdpStatus status = TwdpStatus::infeasible;
    std::optional<Energy> energy;
    int width = -1;
    std::size_t checkpoint_budget = 0;
    Energy rho = 0;  // largest threshold tried
};

std::size_t default_checkpoint_budget(std::size_t k, int width, std::size_t visit_cap);

TwdpResult solve_twdp(const Instance& instance, const TwdpOptions& options = {});

std::string to_string(TwdpStatus s);

}  // namespace coordmp
