#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include "coordmp/error.hpp"
#include "coordmp/twdp.hpp"

namespace coordmp {

int NiceTreeDecomposition::width() const {
    std::size_t widest = 0;
    for (const TdNode& n : nodes) widest = std::max(widest, n.bag.size());
    return static_cast<int>(widest) - 1;
}

std::string to_string(TdKind kind) {
    switch (kind) {
        case TdKind::leaf: return "leaf";
        case TdKind::introduce: return "introduce";
        case TdKind::forget: return "forget";
        case TdKind::join: return "join";
        case TdKind::root: return "root";
    }
    return "unknown";
}

namespace {

using Mask = std::uint32_t;

std::vector<Vertex> set_union(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Vertex> set_minus(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

std::pair<int, std::vector<Vertex>> exact_treewidth(const Graph& g, std::size_t max_exact_vertices) {
    const std::size_t n = g.vertex_count();
    if (n > max_exact_vertices || n > 26) {
        throw LimitError("exact treewidth is limited to " + std::to_string(std::min<std::size_t>(max_exact_vertices, 26)) +
                         " non-terminal vertices (got " + std::to_string(n) + "); supply a decomposition with --td-file");
    }
    if (n == 0) return {-1, {}};
    std::vector<Mask> adj(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)] |= Mask{1} << v;
        adj[static_cast<std::size_t>(v)] |= Mask{1} << u;
    }
    // Vertices outside S and v reachable from v through S: v's degree when eliminated
    // right after S.
    auto q_size = [&](Mask s, std::size_t v) {
        Mask reach = adj[v];
        Mask seen = Mask{1} << v;
        Mask frontier = reach & s;
        seen |= frontier;
        while (frontier) {
            Mask next = 0;
            for (Mask f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(__builtin_ctz(f))];
            reach |= next;
            frontier = next & s & ~seen;
            seen |= frontier;
        }
        reach &= ~s & ~(Mask{1} << v);
        return __builtin_popcount(reach);
    };
    const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
    tw[0] = -1;
    for (Mask s = 1; s <= full && s != 0; ++s) {
        int best = 127;
        for (Mask rest = s; rest; rest &= rest - 1) {
            auto v = static_cast<std::size_t>(__builtin_ctz(rest));
            Mask without = s & ~(Mask{1} << v);
            int cand = std::max<int>(tw[without], q_size(without, v));
            best = std::min(best, cand);
        }
        tw[s] = static_cast<std::int8_t>(best);
        if (s == full) break;
    }
    std::vector<Vertex> order;
    for (Mask s = full; s;) {
        for (Mask rest = s; rest; rest &= rest - 1) {
            auto v = static_cast<std::size_t>(__builtin_ctz(rest));
            Mask without = s & ~(Mask{1} << v);
            if (std::max<int>(tw[without], q_size(without, v)) == tw[s]) {
                order.push_back(static_cast<Vertex>(v));
                s = without;
                break;
            }
        }
    }
    std::reverse(order.begin(), order.end());
    return {tw[full], order};
}

namespace {

TreeDecomposition from_elimination(const Graph& g, const std::vector<Vertex>& order) {
    const std::size_t n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = i;
    std::vector<std::set<Vertex>> fill(n);
    for (auto [u, v] : g.edges()) {
        fill[static_cast<std::size_t>(u)].insert(v);
        fill[static_cast<std::size_t>(v)].insert(u);
    }
    std::vector<int> parent(n, -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex v = order[i];
        std::vector<Vertex> later;
        for (Vertex u : fill[static_cast<std::size_t>(v)]) {
            if (rank[static_cast<std::size_t>(u)] > i) later.push_back(u);
        }
        for (Vertex a : later) {
            for (Vertex b : later) {
                if (a != b) fill[static_cast<std::size_t>(a)].insert(b);
            }
        }
        std::vector<Vertex> bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        if (!later.empty()) {
            Vertex first = *std::min_element(later.begin(), later.end(), [&](Vertex a, Vertex b) {
                return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
            });
            parent[i] = static_cast<int>(rank[static_cast<std::size_t>(first)]);
        }
    }
    // Bag i belongs to order[i]; hang every root below the last one.
    const int top = static_cast<int>(order.size()) - 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (static_cast<int>(i) == top) continue;
        int p = parent[i] == -1 ? top : parent[i];
        td.edges.emplace_back(p, static_cast<int>(i));
    }
    return td;
}

struct Builder {
    NiceTreeDecomposition out;

    int add(TdKind kind, std::vector<Vertex> bag, std::vector<int> children, Vertex v = kNoVertex) {
        TdNode node;
        node.kind = kind;
        node.bag = std::move(bag);
        node.children = std::move(children);
        node.vertex = v;
        int id = static_cast<int>(out.nodes.size());
        for (int c : node.children) out.nodes[static_cast<std::size_t>(c)].parent = id;
        out.nodes.push_back(std::move(node));
        return id;
    }

    int chain(int idx, const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
        std::vector<Vertex> bag = from;
        for (Vertex v : set_minus(from, to)) {
            bag.erase(std::find(bag.begin(), bag.end(), v));
            idx = add(TdKind::forget, bag, {idx}, v);
        }
        for (Vertex v : set_minus(to, from)) {
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            idx = add(TdKind::introduce, bag, {idx}, v);
        }
        return idx;
    }
};

}  // namespace

NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& plain, const std::vector<Vertex>& terminals) {
    std::vector<Vertex> term = terminals;
    std::sort(term.begin(), term.end());
    term.erase(std::unique(term.begin(), term.end()), term.end());
    TreeDecomposition check = plain;
    for (auto& bag : check.bags) {
        bag = set_union([&] { auto b = bag; std::sort(b.begin(), b.end()); return b; }(), term);
    }
    if (auto defect = td_defect(g, check)) throw InputError("invalid tree decomposition: " + *defect);

    const std::size_t m = plain.bags.size();
    std::vector<std::vector<Vertex>> bags(m);
    std::vector<std::vector<int>> kids(m);
    std::vector<bool> has_parent(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        auto b = plain.bags[i];
        std::sort(b.begin(), b.end());
        bags[i] = set_minus(b, term);
    }
    for (auto [p, c] : plain.edges) {
        kids[static_cast<std::size_t>(p)].push_back(c);
        has_parent[static_cast<std::size_t>(c)] = true;
    }
    int top = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!has_parent[i]) top = static_cast<int>(i);
    }
    Builder b;
    // Iterative post-order to keep deep decompositions off the call stack.
    std::vector<int> result(m, -1);
    std::vector<std::pair<int, bool>> stack{{top, false}};
    while (!stack.empty()) {
        auto [node, expanded] = stack.back();
        stack.pop_back();
        const auto ni = static_cast<std::size_t>(node);
        if (!expanded) {
            stack.emplace_back(node, true);
            for (auto it = kids[ni].rbegin(); it != kids[ni].rend(); ++it) stack.emplace_back(*it, false);
            continue;
        }
        std::vector<int> subs;
        for (int c : kids[ni]) subs.push_back(b.chain(result[static_cast<std::size_t>(c)], bags[static_cast<std::size_t>(c)], bags[ni]));
        int idx;
        if (subs.empty()) {
            idx = b.chain(b.add(TdKind::leaf, {}, {}), {}, bags[ni]);
        } else {
            idx = subs[0];
            for (std::size_t s = 1; s < subs.size(); ++s) idx = b.add(TdKind::join, bags[ni], {idx, subs[s]});
        }
        result[ni] = idx;
    }
    int r = b.chain(result[static_cast<std::size_t>(top)], bags[static_cast<std::size_t>(top)], {});
    b.out.root = b.add(TdKind::root, {}, {r});
    NiceTreeDecomposition out = std::move(b.out);
    out.base_width = out.width();
    for (TdNode& n : out.nodes) n.bag = set_union(n.bag, term);
    out.terminals = term;
    if (auto defect = nice_td_defect(g, out)) throw std::logic_error("nice-ification broke the decomposition: " + *defect);
    return out;
}

NiceTreeDecomposition build_nice_td(const Graph& g, const std::vector<Vertex>& terminals, std::size_t max_exact_vertices) {
    std::vector<bool> is_term(g.vertex_count(), false);
    for (Vertex t : terminals) is_term[static_cast<std::size_t>(t)] = true;
    std::vector<Vertex> keep;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (!is_term[v]) keep.push_back(static_cast<Vertex>(v));
    }
    Graph rest = g.induced(keep);
    auto [tw, order] = exact_treewidth(rest, max_exact_vertices);
    (void)tw;
    TreeDecomposition td = from_elimination(rest, order);
    for (auto& bag : td.bags) {
        for (Vertex& v : bag) v = keep[static_cast<std::size_t>(v)];
        std::sort(bag.begin(), bag.end());
    }
    return make_nice(g, td, terminals);
}

namespace {

// Nodes whose bag holds v must form a connected subtree: exactly one of them has a
// parent that lacks v.
std::optional<std::string> occurrence_defect(const Graph& g, const std::vector<std::vector<Vertex>>& bags,
                                             const std::vector<int>& parent) {
    const std::size_t n = g.vertex_count();
    std::vector<int> tops(n, 0);
    std::vector<bool> covered(n, false);
    for (std::size_t i = 0; i < bags.size(); ++i) {
        for (Vertex v : bags[i]) {
            covered[static_cast<std::size_t>(v)] = true;
            const int p = parent[i];
            if (p == -1 || !std::binary_search(bags[static_cast<std::size_t>(p)].begin(), bags[static_cast<std::size_t>(p)].end(), v)) {
                ++tops[static_cast<std::size_t>(v)];
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!covered[v]) return "vertex coverage: vertex " + std::to_string(v) + " is in no bag";
    }
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& bag : bags) {
            if (std::binary_search(bag.begin(), bag.end(), u) && std::binary_search(bag.begin(), bag.end(), v)) {
                found = true;
                break;
            }
        }
        if (!found) return "edge coverage: edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (tops[v] > 1) return "connectivity: bags containing vertex " + std::to_string(v) + " are not connected";
    }
    return std::nullopt;
}

std::optional<std::string> tree_shape_defect(std::size_t count, const std::vector<std::pair<int, int>>& edges,
                                             std::vector<int>& parent) {
    parent.assign(count, -1);
    if (count == 0) return "tree: no nodes";
    if (edges.size() + 1 != count) return "tree: expected " + std::to_string(count - 1) + " edges";
    std::vector<std::vector<int>> kids(count);
    for (auto [p, c] : edges) {
        if (p < 0 || c < 0 || static_cast<std::size_t>(p) >= count || static_cast<std::size_t>(c) >= count) {
            return "tree: edge endpoint out of range";
        }
        if (parent[static_cast<std::size_t>(c)] != -1) return "tree: node " + std::to_string(c) + " has two parents";
        parent[static_cast<std::size_t>(c)] = p;
        kids[static_cast<std::size_t>(p)].push_back(c);
    }
    int root = -1;
    for (std::size_t i = 0; i < count; ++i) {
        if (parent[i] == -1) {
            if (root != -1) return "tree: more than one root";
            root = static_cast<int>(i);
        }
    }
    if (root == -1) return "tree: no root";
    std::vector<bool> seen(count, false);
    std::vector<int> stack{root};
    std::size_t visited = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(u)]) return "tree: cycle";
        seen[static_cast<std::size_t>(u)] = true;
        ++visited;
        for (int c : kids[static_cast<std::size_t>(u)]) stack.push_back(c);
    }
    if (visited != count) return "tree: not connected";
    return std::nullopt;
}

}  // namespace

std::optional<std::string> td_defect(const Graph& g, const TreeDecomposition& td) {
    std::vector<std::vector<Vertex>> bags = td.bags;
    for (auto& b : bags) {
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end()) return "bag with repeated vertex";
        for (Vertex v : b) {
            if (!g.valid(v)) return "bag vertex out of range";
        }
    }
    std::vector<int> parent;
    if (auto d = tree_shape_defect(bags.size(), td.edges, parent)) return d;
    return occurrence_defect(g, bags, parent);
}

std::optional<std::string> nice_td_defect(const Graph& g, const NiceTreeDecomposition& td) {
    const std::size_t count = td.nodes.size();
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < count; ++i) {
        for (int c : td.nodes[i].children) edges.emplace_back(static_cast<int>(i), c);
    }
    std::vector<int> parent;
    if (auto d = tree_shape_defect(count, edges, parent)) return d;
    if (td.root < 0 || static_cast<std::size_t>(td.root) >= count || parent[static_cast<std::size_t>(td.root)] != -1) {
        return "tree: root index does not name the root";
    }
    std::vector<std::vector<Vertex>> bags;
    for (std::size_t i = 0; i < count; ++i) {
        const TdNode& n = td.nodes[i];
        if (!std::is_sorted(n.bag.begin(), n.bag.end()) || std::adjacent_find(n.bag.begin(), n.bag.end()) != n.bag.end()) {
            return "node " + std::to_string(i) + ": bag not sorted or repeats a vertex";
        }
        for (Vertex v : n.bag) {
            if (!g.valid(v)) return "node " + std::to_string(i) + ": bag vertex out of range";
        }
        if (n.parent != parent[i]) return "node " + std::to_string(i) + ": parent link inconsistent";
        for (Vertex t : td.terminals) {
            if (!std::binary_search(n.bag.begin(), n.bag.end(), t)) {
                return "terminals: node " + std::to_string(i) + " misses terminal " + std::to_string(t);
            }
        }
        const std::string where = to_string(n.kind) + " node " + std::to_string(i) + ": ";
        auto child_bag = [&](std::size_t j) -> const std::vector<Vertex>& {
            return td.nodes[static_cast<std::size_t>(n.children[j])].bag;
        };
        switch (n.kind) {
            case TdKind::leaf:
                if (!n.children.empty()) return where + "has children";
                if (n.bag != td.terminals) return where + "bag differs from the terminal set";
                break;
            case TdKind::root:
                if (static_cast<int>(i) != td.root) return where + "is not the root";
                if (n.children.size() != 1) return where + "needs exactly one child";
                if (n.bag != td.terminals) return where + "bag differs from the terminal set";
                break;
            case TdKind::introduce:
            case TdKind::forget: {
                if (n.children.size() != 1) return where + "needs exactly one child";
                const bool intro = n.kind == TdKind::introduce;
                const auto& big = intro ? n.bag : child_bag(0);
                const auto& small = intro ? child_bag(0) : n.bag;
                auto diff = set_minus(big, small);
                if (diff.size() != 1 || set_minus(small, big).size() != 0 || diff[0] != n.vertex) {
                    return where + "bag must differ from its child's by exactly vertex " + std::to_string(n.vertex);
                }
                break;
            }
            case TdKind::join:
                if (n.children.size() != 2) return where + "needs exactly two children";
                if (child_bag(0) != n.bag || child_bag(1) != n.bag) return where + "children bags differ";
                break;
        }
        if (static_cast<int>(i) == td.root && n.kind != TdKind::root) return "root node has kind " + to_string(n.kind);
        bags.push_back(n.bag);
    }
    return occurrence_defect(g, bags, parent);
}

namespace {

std::optional<long long> integer(const std::string& tok) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
    return v;
}

}  // namespace

NiceTreeDecomposition parse_td(std::string_view text, const Graph& g, const std::vector<Vertex>& terminals) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    bool header = false;
    std::map<long long, std::pair<std::string, std::vector<Vertex>>> nodes;
    std::vector<std::pair<long long, long long>> edges;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream line(raw);
        std::vector<std::string> tok;
        for (std::string t; line >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "td" || tok[1] != "1") throw ParseError(number, "expected header 'td 1'");
            header = true;
            continue;
        }
        if (tok[0] == "node") {
            if (tok.size() < 3) throw ParseError(number, "expected 'node <id> <kind> <bag...>'");
            auto id = integer(tok[1]);
            if (!id || *id < 0) throw ParseError(number, "bad node id");
            std::vector<Vertex> bag;
            for (std::size_t i = 3; i < tok.size(); ++i) {
                auto v = integer(tok[i]);
                if (!v || !g.valid(static_cast<Vertex>(*v))) throw ParseError(number, "bad bag vertex '" + tok[i] + "'");
                bag.push_back(static_cast<Vertex>(*v));
            }
            std::sort(bag.begin(), bag.end());
            if (!nodes.emplace(*id, std::pair{tok[2], bag}).second) throw ParseError(number, "duplicate node id");
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) throw ParseError(number, "expected 'edge <parent> <child>'");
            auto p = integer(tok[1]);
            auto c = integer(tok[2]);
            if (!p || !c) throw ParseError(number, "bad edge");
            edges.emplace_back(*p, *c);
        } else {
            throw ParseError(number, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!header) throw ParseError(1, "empty decomposition file");
    std::map<long long, int> index;
    for (const auto& [id, node] : nodes) index.emplace(id, static_cast<int>(index.size()));
    auto resolve = [&](long long id) {
        auto it = index.find(id);
        if (it == index.end()) throw InputError("edge names unknown node " + std::to_string(id));
        return it->second;
    };
    const bool plain = std::all_of(nodes.begin(), nodes.end(), [](const auto& n) { return n.second.first == "bag"; });
    if (plain) {
        TreeDecomposition td;
        for (const auto& [id, node] : nodes) td.bags.push_back(node.second);
        for (auto [p, c] : edges) td.edges.emplace_back(resolve(p), resolve(c));
        return make_nice(g, td, terminals);
    }
    NiceTreeDecomposition td;
    td.terminals = terminals;
    std::sort(td.terminals.begin(), td.terminals.end());
    td.terminals.erase(std::unique(td.terminals.begin(), td.terminals.end()), td.terminals.end());
    for (const auto& [id, node] : nodes) {
        TdNode n;
        const std::string& kind = node.first;
        if (kind == "leaf") n.kind = TdKind::leaf;
        else if (kind == "introduce") n.kind = TdKind::introduce;
        else if (kind == "forget") n.kind = TdKind::forget;
        else if (kind == "join") n.kind = TdKind::join;
        else if (kind == "root") n.kind = TdKind::root;
        else throw InputError("node " + std::to_string(id) + ": unknown kind '" + kind + "'");
        n.bag = node.second;
        td.nodes.push_back(std::move(n));
    }
    for (auto [p, c] : edges) {
        int pi = resolve(p);
        int ci = resolve(c);
        td.nodes[static_cast<std::size_t>(pi)].children.push_back(ci);
        td.nodes[static_cast<std::size_t>(ci)].parent = pi;
    }
    for (std::size_t i = 0; i < td.nodes.size(); ++i) {
        TdNode& n = td.nodes[i];
        if (n.parent == -1) td.root = static_cast<int>(i);
        if ((n.kind == TdKind::introduce || n.kind == TdKind::forget) && n.children.size() == 1) {
            const auto& cb = td.nodes[static_cast<std::size_t>(n.children[0])].bag;
            auto diff = n.kind == TdKind::introduce ? set_minus(n.bag, cb) : set_minus(cb, n.bag);
            if (diff.size() == 1) n.vertex = diff[0];
        }
    }
    if (auto defect = nice_td_defect(g, td)) throw InputError("invalid decomposition: " + *defect);
    std::size_t widest = 0;
    for (const TdNode& n : td.nodes) widest = std::max(widest, set_minus(n.bag, td.terminals).size());
    td.base_width = static_cast<int>(widest) - 1;
    return td;
}

std::string render_td(const NiceTreeDecomposition& td) {
    std::ostringstream out;
    out << "td 1\n";
    for (std::size_t i = 0; i < td.nodes.size(); ++i) {
        out << "node " << i << " " << to_string(td.nodes[i].kind);
        for (Vertex v : td.nodes[i].bag) out << " " << v;
        out << "\n";
    }
    for (std::size_t i = 0; i < td.nodes.size(); ++i) {
        for (int c : td.nodes[i].children) out << "edge " << i << " " << c << "\n";
    }
    return out.str();
}

}  // namespace coordmp
