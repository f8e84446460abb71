#include <algorithm>
#include <deque>
#include <future>
#include <limits>

#include "coordmp/approx.hpp"
#include "coordmp/error.hpp"
#include "coordmp/twdp.hpp"

namespace coordmp {

namespace {

constexpr RobotId kNobody = -1;

// Node-local predicates. "Outside" means not in or below the bag; "inside" means
// strictly below it.
struct NodeView {
    const DpContext& ctx;
    const TdNode& node;
    const std::vector<bool>& below;

    NodeView(const DpContext& c, int id)
        : ctx(c), node(c.td->nodes[static_cast<std::size_t>(id)]), below(c.below[static_cast<std::size_t>(id)]) {}

    bool in_bag(Vertex v) const { return std::binary_search(node.bag.begin(), node.bag.end(), v); }
    bool has_out(Vertex z) const {
        for (Vertex u : ctx.graph->neighbors(z)) {
            if (!below[static_cast<std::size_t>(u)]) return true;
        }
        return false;
    }
    bool has_in(Vertex z) const {
        for (Vertex u : ctx.graph->neighbors(z)) {
            if (below[static_cast<std::size_t>(u)] && !in_bag(u)) return true;
        }
        return false;
    }
};

bool goal_valid(const Instance& in, const Vertex* tuple) {
    for (std::size_t r = 0; r < in.robot_count(); ++r) {
        const auto& goal = in.robots()[r].goal;
        if (goal && tuple[r] != *goal) return false;
    }
    return true;
}

void record(DpTable& table, const Chain& chain, DpEntry entry, std::size_t cap) {
    auto [it, fresh] = table.try_emplace(chain, entry);
    if (!fresh && entry.h < it->second.h) it->second = entry;
    if (table.size() > cap) {
        throw LimitError("decomposition table exceeded " + std::to_string(cap) + " entries");
    }
}

const Vertex* last_tuple(const Chain& c) { return c.cells.data() + c.cells.size() - c.width; }

// Remaining-cost bound per goal-bearing robot on the bag plus two virtual nodes for
// the outside and the inside.
struct BagDistances {
    std::vector<Vertex> bag;
    std::vector<std::vector<int>> dist;  // per robot, per virtual index; empty for free robots

    int index(Vertex v) const {
        if (v == kUp) return static_cast<int>(bag.size());
        if (v == kDown) return static_cast<int>(bag.size()) + 1;
        return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    }

    BagDistances(const NodeView& nv, const Instance& in) : bag(nv.node.bag) {
        const std::size_t b = bag.size();
        std::vector<std::vector<int>> adj(b + 2);
        for (std::size_t i = 0; i < b; ++i) {
            for (Vertex u : nv.ctx.graph->neighbors(bag[i])) {
                if (nv.in_bag(u)) adj[i].push_back(index(u));
            }
            if (nv.has_out(bag[i])) {
                adj[i].push_back(static_cast<int>(b));
                adj[b].push_back(static_cast<int>(i));
            }
            if (nv.has_in(bag[i])) {
                adj[i].push_back(static_cast<int>(b + 1));
                adj[b + 1].push_back(static_cast<int>(i));
            }
        }
        for (const Robot& r : in.robots()) {
            if (!r.goal) {
                dist.emplace_back();
                continue;
            }
            std::vector<int> d(b + 2, -1);
            std::deque<int> queue{index(*r.goal)};
            d[static_cast<std::size_t>(queue.front())] = 0;
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                for (int y : adj[static_cast<std::size_t>(x)]) {
                    if (d[static_cast<std::size_t>(y)] == -1) {
                        d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
                        queue.push_back(y);
                    }
                }
            }
            dist.push_back(std::move(d));
        }
    }

    // Infinity when some robot cannot reach its goal.
    Energy bound(const Vertex* tuple) const {
        Energy total = 0;
        for (std::size_t r = 0; r < dist.size(); ++r) {
            if (dist[r].empty()) continue;
            int d = dist[r][static_cast<std::size_t>(index(tuple[r]))];
            if (d < 0) return std::numeric_limits<Energy>::max() / 4;
            total += d;
        }
        return total;
    }
};

}  // namespace

DpContext DpContext::make(const Graph& g, const Instance& in, const NiceTreeDecomposition& td, Energy rho,
                          std::size_t budget) {
    DpContext ctx;
    ctx.graph = &g;
    ctx.instance = &in;
    ctx.td = &td;
    ctx.rho = rho;
    ctx.checkpoint_budget = budget;
    ctx.below.assign(td.nodes.size(), std::vector<bool>(g.vertex_count(), false));
    // Children always precede parents in a post-order walk from the root.
    std::vector<int> order;
    std::vector<int> stack{td.root};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int c : td.nodes[static_cast<std::size_t>(x)].children) stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto& mask = ctx.below[static_cast<std::size_t>(*it)];
        const TdNode& n = td.nodes[static_cast<std::size_t>(*it)];
        for (Vertex v : n.bag) mask[static_cast<std::size_t>(v)] = true;
        for (int c : n.children) {
            const auto& cm = ctx.below[static_cast<std::size_t>(c)];
            for (std::size_t v = 0; v < mask.size(); ++v) {
                if (cm[v]) mask[v] = true;
            }
        }
    }
    return ctx;
}

DpTable dp_leaf(const DpContext& ctx, int node) {
    const NodeView nv(ctx, node);
    const Instance& in = *ctx.instance;
    const Graph& g = *ctx.graph;
    const std::size_t k = in.robot_count();
    const BagDistances lb(nv, in);
    std::vector<bool> out_ok(g.vertex_count(), false);
    for (Vertex z : nv.node.bag) out_ok[static_cast<std::size_t>(z)] = nv.has_out(z);

    DpTable table;
    Chain chain{k, in.starts()};
    if (lb.bound(chain.cells.data()) > ctx.rho) return table;

    // Depth-first over joint one-step transitions; every transition costs at least one.
    auto extend = [&](auto& self, Energy h, Energy ext) -> void {
        const Vertex* cur = last_tuple(chain);
        if (goal_valid(in, cur)) record(table, chain, {h, ext}, ctx.max_entries);
        if (chain.length() - 1 >= ctx.checkpoint_budget) return;
        const std::vector<Vertex> now(cur, cur + k);
        std::vector<Vertex> next(k);

        auto choose = [&](auto& pick, std::size_t r, Energy dh, Energy dext) -> void {
            if (h + dh + ext + dext > ctx.rho) return;
            if (r == k) {
                if (next == now) return;
                for (std::size_t a = 0; a < k; ++a) {
                    if (now[a] < 0 || next[a] < 0 || now[a] == next[a]) continue;
                    for (std::size_t b = 0; b < k; ++b) {
                        if (b != a && now[b] == next[a] && next[b] == now[a]) return;
                    }
                }
                if (h + dh + ext + dext + lb.bound(next.data()) > ctx.rho) return;
                chain.cells.insert(chain.cells.end(), next.begin(), next.end());
                self(self, h + dh, ext + dext);
                chain.cells.resize(chain.cells.size() - k);
                return;
            }
            auto taken = [&](Vertex v) {
                for (std::size_t q = 0; q < r; ++q) {
                    if (next[q] == v) return true;
                }
                return false;
            };
            const Vertex at = now[r];
            if (at == kUp) {
                next[r] = kUp;
                pick(pick, r + 1, dh, dext);
                for (Vertex z : nv.node.bag) {
                    if (out_ok[static_cast<std::size_t>(z)] && !taken(z)) {
                        next[r] = z;
                        pick(pick, r + 1, dh, dext + 1);
                    }
                }
                return;
            }
            if (!taken(at)) {
                next[r] = at;
                pick(pick, r + 1, dh, dext);
            }
            for (Vertex u : g.neighbors(at)) {
                if (nv.in_bag(u) && !taken(u)) {
                    next[r] = u;
                    pick(pick, r + 1, dh + 1, dext);
                }
            }
            if (out_ok[static_cast<std::size_t>(at)]) {
                next[r] = kUp;
                pick(pick, r + 1, dh, dext + 1);
            }
        };
        choose(choose, 0, 0, 0);
    };
    extend(extend, 0, 0);
    return table;
}

DpTable dp_introduce(const DpContext& ctx, int node, const DpTable& child) {
    const NodeView nv(ctx, node);
    const Instance& in = *ctx.instance;
    const Graph& g = *ctx.graph;
    const std::size_t k = in.robot_count();
    const Vertex v = nv.node.vertex;
    const bool v_out = nv.has_out(v);
    std::vector<char> out_ok(g.vertex_count(), 0);
    for (Vertex z : nv.node.bag) out_ok[static_cast<std::size_t>(z)] = nv.has_out(z) ? 1 : 0;

    DpTable table;
    for (const auto& [cc, entry] : child) {
        const Energy base = entry.h + entry.ext;
        if (base > ctx.rho) continue;
        const std::size_t m = cc.length();
        Chain parent{k, {}};
        auto child_at = [&](std::size_t j) { return cc.cells.data() + j * k; };
        auto push = [&](const Vertex* tuple, RobotId occupant) {
            parent.cells.insert(parent.cells.end(), tuple, tuple + k);
            if (occupant != kNobody) parent.cells[parent.cells.size() - k + static_cast<std::size_t>(occupant)] = v;
        };
        auto pop = [&] { parent.cells.resize(parent.cells.size() - k); };
        auto is_free = [&](RobotId r) { return in.robots()[static_cast<std::size_t>(r)].is_free(); };

        auto walk = [&](auto& self, std::size_t j, RobotId a, Energy vtrans, Energy mu) -> void {
            if (j + 1 == m && (a == kNobody || is_free(a))) {
                record(table, parent, {entry.h + mu, entry.ext - mu + vtrans}, ctx.max_entries);
            }
            if (parent.length() - 1 >= ctx.checkpoint_budget) return;
            const Vertex* from = child_at(j);

            // Only the occupant of v changes, through v's outside neighbors.
            if (v_out) {
                if (a != kNobody && base + vtrans + 1 <= ctx.rho) {
                    push(from, kNobody);
                    self(self, j, kNobody, vtrans + 1, mu);
                    pop();
                }
                for (std::size_t r = 0; r < k; ++r) {
                    const auto rid = static_cast<RobotId>(r);
                    if (rid == a || from[r] != kUp) continue;
                    const Energy cost = vtrans + (a == kNobody ? 1 : 2);
                    if (base + cost > ctx.rho) continue;
                    push(from, rid);
                    self(self, j, rid, cost, mu);
                    pop();
                }
            }
            if (j + 1 >= m) return;

            // The child's transition j -> j+1, with v's occupant resolved alongside.
            const Vertex* to = child_at(j + 1);
            struct Leave {
                bool stays;
                Vertex dest;  // kUp for outside, else a bag vertex
                Energy dv;
                Energy dmu;
            };
            std::vector<Leave> leaves;
            if (a == kNobody) {
                leaves.push_back({false, kUp, 0, 0});
            } else {
                const Vertex t = to[static_cast<std::size_t>(a)];
                if (t == kUp) {
                    leaves.push_back({true, kUp, 0, 0});
                    if (v_out) leaves.push_back({false, kUp, 1, 0});
                } else if (t >= 0 && g.has_edge(v, t)) {
                    leaves.push_back({false, t, 0, 1});
                }
            }
            for (const Leave& lv : leaves) {
                // Entrant candidates: kNobody, or (robot, came_from_bag).
                std::vector<std::pair<RobotId, Vertex>> entrants;
                if (lv.stays) {
                    entrants.emplace_back(a, kUp);
                } else {
                    entrants.emplace_back(kNobody, kUp);
                    for (std::size_t r = 0; r < k; ++r) {
                        const auto rid = static_cast<RobotId>(r);
                        if (rid == a || to[r] != kUp) continue;
                        if (from[r] == kUp && v_out) entrants.emplace_back(rid, kUp);
                        if (from[r] >= 0 && g.has_edge(from[r], v) && !(a != kNobody && lv.dest == from[r])) {
                            entrants.emplace_back(rid, from[r]);
                        }
                    }
                }
                for (auto [occ, src] : entrants) {
                    Energy dv = lv.dv;
                    Energy dmu = lv.dmu;
                    if (occ != kNobody && !lv.stays) {
                        if (src == kUp) ++dv;
                        else ++dmu;
                    }
                    if (base + vtrans + dv > ctx.rho) continue;
                    bool ok = true;
                    for (std::size_t r = 0; r < k && ok; ++r) {
                        const auto rid = static_cast<RobotId>(r);
                        if (rid == a || rid == occ) continue;
                        if (from[r] == kUp && to[r] >= 0) ok = out_ok[static_cast<std::size_t>(to[r])] != 0;
                        else if (from[r] >= 0 && to[r] == kUp) ok = out_ok[static_cast<std::size_t>(from[r])] != 0;
                    }
                    if (!ok) continue;
                    push(to, occ);
                    self(self, j + 1, occ, vtrans + dv, mu + dmu);
                    pop();
                }
            }
        };
        push(child_at(0), kNobody);
        walk(walk, 0, kNobody, 0, 0);
    }
    return table;
}

DpTable dp_forget(const DpContext& ctx, int node, const DpTable& child) {
    const Vertex v = ctx.td->nodes[static_cast<std::size_t>(node)].vertex;
    DpTable table;
    for (const auto& [cc, entry] : child) {
        const std::size_t k = cc.width;
        Chain out{k, {}};
        out.cells.reserve(cc.cells.size());
        for (std::size_t i = 0; i < cc.length(); ++i) {
            const std::size_t at = out.cells.size();
            for (std::size_t r = 0; r < k; ++r) {
                Vertex x = cc.cells[i * k + r];
                out.cells.push_back(x == v ? kDown : x);
            }
            if (at > 0 && std::equal(out.cells.begin() + static_cast<std::ptrdiff_t>(at - k),
                                     out.cells.begin() + static_cast<std::ptrdiff_t>(at),
                                     out.cells.begin() + static_cast<std::ptrdiff_t>(at))) {
                out.cells.resize(at);
            }
        }
        record(table, out, entry, ctx.max_entries);
    }
    return table;
}

DpTable dp_join(const DpContext& ctx, int node, const DpTable& left, const DpTable& right) {
    const NodeView nv(ctx, node);
    const Graph& g = *ctx.graph;
    std::vector<char> out_ok(g.vertex_count(), 0);
    for (Vertex z : nv.node.bag) out_ok[static_cast<std::size_t>(z)] = nv.has_out(z) ? 1 : 0;

    auto skeleton = [](const Chain& c) {
        Chain s = c;
        for (Vertex& x : s.cells) {
            if (x == kDown) x = kUp;
        }
        return s;
    };
    std::unordered_map<Chain, std::vector<const DpTable::value_type*>, ChainHash> buckets;
    for (const auto& e : left) buckets[skeleton(e.first)].push_back(&e);

    DpTable table;
    for (const auto& [rc, re] : right) {
        auto it = buckets.find(skeleton(rc));
        if (it == buckets.end()) continue;
        for (const auto* le : it->second) {
            const Chain& lc = le->first;
            Chain merged{lc.width, lc.cells};
            bool ok = true;
            for (std::size_t i = 0; i < merged.cells.size() && ok; ++i) {
                const Vertex l = lc.cells[i];
                const Vertex r = rc.cells[i];
                if (l == kDown && r == kDown) ok = false;
                else if (r == kDown) merged.cells[i] = kDown;
            }
            if (!ok) continue;
            Energy mu = 0;
            Energy ext = 0;
            const std::size_t k = merged.width;
            for (std::size_t i = 0; i + 1 < merged.length() && ok; ++i) {
                for (std::size_t r = 0; r < k; ++r) {
                    const Vertex a = merged.cells[i * k + r];
                    const Vertex b = merged.cells[(i + 1) * k + r];
                    if (a >= 0 && b >= 0 && a != b) ++mu;
                    if (a == kUp && b >= 0) {
                        ++ext;
                        if (!out_ok[static_cast<std::size_t>(b)]) ok = false;
                    } else if (a >= 0 && b == kUp) {
                        ++ext;
                        if (!out_ok[static_cast<std::size_t>(a)]) ok = false;
                    }
                }
            }
            if (!ok) continue;
            const Energy h = le->second.h + re.h - mu;
            if (h + ext > ctx.rho) continue;
            record(table, merged, {h, ext}, ctx.max_entries);
        }
    }
    return table;
}

namespace {

DpTable evaluate(const DpContext& ctx, int node, unsigned threads, const DpTable& leaf) {
    const TdNode& n = ctx.td->nodes[static_cast<std::size_t>(node)];
    switch (n.kind) {
        case TdKind::leaf:
            return leaf;
        case TdKind::introduce:
            return dp_introduce(ctx, node, evaluate(ctx, n.children[0], threads, leaf));
        case TdKind::forget:
            return dp_forget(ctx, node, evaluate(ctx, n.children[0], threads, leaf));
        case TdKind::root:
            return evaluate(ctx, n.children[0], threads, leaf);
        case TdKind::join: {
            if (threads > 1) {
                const unsigned half = threads / 2;
                auto left = std::async(std::launch::async, [&] { return evaluate(ctx, n.children[0], half, leaf); });
                DpTable right = evaluate(ctx, n.children[1], threads - half, leaf);
                return dp_join(ctx, node, left.get(), right);
            }
            DpTable left = evaluate(ctx, n.children[0], 1, leaf);
            DpTable right = evaluate(ctx, n.children[1], 1, leaf);
            return dp_join(ctx, node, left, right);
        }
    }
    return {};
}

}  // namespace

DpTable dp_table(const DpContext& ctx, int node, unsigned threads) {
    // Every leaf bag is the terminal set with nothing below it, so one table serves all.
    int leaf = node;
    while (!ctx.td->nodes[static_cast<std::size_t>(leaf)].children.empty()) {
        leaf = ctx.td->nodes[static_cast<std::size_t>(leaf)].children[0];
    }
    const DpTable leaf_table = dp_leaf(ctx, leaf);
    return evaluate(ctx, node, std::max(1u, threads), leaf_table);
}

std::size_t default_checkpoint_budget(std::size_t k, int width, std::size_t visit_cap) {
    const std::size_t w1 = static_cast<std::size_t>(std::max(width, 0)) + 1;
    return 2 * k * w1 * std::min<std::size_t>(visit_cap, 8);
}

TwdpResult solve_twdp(const Instance& instance, const TwdpOptions& options) {
    const Graph& g = instance.graph();
    TwdpResult result;
    const NiceTreeDecomposition td =
        options.decomposition ? *options.decomposition : build_nice_td(g, instance.terminals());
    if (auto defect = nice_td_defect(g, td)) throw InputError("invalid decomposition: " + *defect);
    if (td.terminals != instance.terminals()) throw InputError("decomposition terminals differ from the instance's");
    result.width = td.width();
    result.checkpoint_budget = options.checkpoint_budget.value_or(
        default_checkpoint_budget(instance.robot_count(), result.width, options.visit_cap));

    const auto lower = instance.distance_lower_bound();
    if (instance.robot_count() == 0) {
        result.status = TwdpStatus::optimal;
        result.energy = 0;
        return result;
    }
    if (!lower) {
        result.status = TwdpStatus::infeasible;
        return result;
    }
    const auto n = static_cast<Energy>(g.vertex_count());
    Energy rho_max = n * n * n * static_cast<Energy>(std::max<std::size_t>(instance.robot_count(), 1));
    FeasibilityResult feas = check_feasible(instance, options.limits);
    if (feas.status == Feasibility::infeasible) {
        result.status = TwdpStatus::infeasible;
        return result;
    }
    if (feas.witness) rho_max = std::min(rho_max, energy(*feas.witness));
    try {
        ApproxOptions ao;
        ao.limits = options.limits;
        ApproxReport rep = approximate(instance, ao);
        if (rep.status == ApproxStatus::ok) rho_max = std::min(rho_max, rep.energy);
    } catch (const UnsupportedStructure&) {
    } catch (const LimitError&) {
    }

    Energy rho = *lower;
    Energy step = 1;
    try {
        while (true) {
            rho = std::min(rho, rho_max);
            result.rho = rho;
            DpContext ctx = DpContext::make(g, instance, td, rho, result.checkpoint_budget);
            ctx.max_entries = options.limits.max_states;
            DpTable root = dp_table(ctx, td.root, options.threads);
            for (const auto& [chain, entry] : root) {
                if (!result.energy || entry.h < *result.energy) result.energy = entry.h;
            }
            if (result.energy || rho >= rho_max) break;
            rho += step;
            if (rho > *lower + 1) step *= 2;
        }
    } catch (const LimitError&) {
        result.status = TwdpStatus::state_limit;
        result.energy.reset();
        return result;
    }

    // Each checkpoint pair costs at least one unit of energy, so a schedule of energy E
    // never needs more than E pairs at any node.
    const bool exhaustive = result.energy ? static_cast<std::size_t>(*result.energy) <= result.checkpoint_budget
                                          : static_cast<std::size_t>(rho_max) <= result.checkpoint_budget;
    if (!result.energy) {
        result.status = exhaustive ? TwdpStatus::infeasible : TwdpStatus::budget_limited;
        return result;
    }
    result.status = exhaustive ? TwdpStatus::optimal : TwdpStatus::budget_limited;
    if (result.status == TwdpStatus::optimal && instance.budget() && *result.energy > *instance.budget()) {
        result.status = TwdpStatus::budget_exceeded;
    }
    return result;
}

std::string to_string(TwdpStatus s) {
    switch (s) {
        case TwdpStatus::optimal: return "optimal";
        case TwdpStatus::infeasible: return "infeasible";
        case TwdpStatus::budget_exceeded: return "budget_exceeded";
        case TwdpStatus::budget_limited: return "budget_limited";
        case TwdpStatus::state_limit: return "state_limit";
    }
    return "unknown";
}

}  // namespace coordmp
