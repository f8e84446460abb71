#include "coordmp/hardness.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "coordmp/error.hpp"

namespace coordmp {

MulticoloredGraph parse_mcc(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    bool header = false;
    std::map<long long, std::vector<std::string>> parts;
    MulticoloredGraph out;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::istringstream line(raw);
        std::vector<std::string> tok;
        for (std::string t; line >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "mcc" || tok[1] != "1") throw ParseError(number, "expected header 'mcc 1'");
            header = true;
        } else if (tok[0] == "part") {
            if (tok.size() < 3) throw ParseError(number, "expected 'part <i> <vertices...>'");
            long long idx = 0;
            auto [p, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), idx);
            if (ec != std::errc() || p != tok[1].data() + tok[1].size()) throw ParseError(number, "bad part index");
            if (parts.count(idx)) throw ParseError(number, "duplicate part " + tok[1]);
            parts[idx] = std::vector<std::string>(tok.begin() + 2, tok.end());
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) throw ParseError(number, "expected 'edge <u> <v>'");
            out.edges.emplace_back(tok[1], tok[2]);
        } else {
            throw ParseError(number, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!header) throw ParseError(1, "empty multicolored graph file");
    for (auto& [idx, members] : parts) out.parts.push_back(std::move(members));
    validate_mcc(out);
    return out;
}

std::string render_mcc(const MulticoloredGraph& mcg) {
    std::ostringstream out;
    out << "mcc 1\n";
    for (std::size_t i = 0; i < mcg.parts.size(); ++i) {
        out << "part " << i + 1;
        for (const auto& v : mcg.parts[i]) out << " " << v;
        out << "\n";
    }
    for (const auto& [u, v] : mcg.edges) out << "edge " << u << " " << v << "\n";
    return out.str();
}

namespace {

std::map<std::string, std::size_t> part_of(const MulticoloredGraph& mcg) {
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < mcg.parts.size(); ++i) {
        for (const auto& v : mcg.parts[i]) owner.emplace(v, i);
    }
    return owner;
}

}  // namespace

void validate_mcc(const MulticoloredGraph& mcg) {
    if (mcg.parts.empty()) throw InputError("multicolored graph has no parts");
    std::map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < mcg.parts.size(); ++i) {
        if (mcg.parts[i].empty()) throw InputError("part " + std::to_string(i + 1) + " is empty");
        for (const auto& v : mcg.parts[i]) {
            if (!owner.emplace(v, i).second) throw InputError("vertex '" + v + "' appears in two parts");
        }
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [u, v] : mcg.edges) {
        auto iu = owner.find(u);
        auto iv = owner.find(v);
        if (iu == owner.end() || iv == owner.end()) {
            throw InputError("edge " + u + "-" + v + " names an unknown vertex");
        }
        if (iu->second == iv->second) throw InputError("edge " + u + "-" + v + " lies inside one part");
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw InputError("edge " + u + "-" + v + " repeated");
    }
}

Energy reduction_budget(std::size_t kappa, std::size_t subdivision) {
    const auto k = static_cast<Energy>(kappa);
    return 2 * k + k * (k - 1) / 2 * (static_cast<Energy>(subdivision) + 3);
}

namespace {

struct Layout {
    std::vector<std::string> names;
    std::map<std::string, Vertex> original;   // part vertex -> id
    std::vector<std::vector<Vertex>> subdivided;  // per edge, from first endpoint to second
    std::map<std::string, Vertex> pendant;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<Vertex, Vertex>> terminals;  // (i,j) -> (s,t)
    std::vector<Edge> edges;
    std::size_t d = 0;
};

Layout lay_out(const MulticoloredGraph& mcg, std::optional<std::size_t> subdivision) {
    validate_mcc(mcg);
    const std::size_t kappa = mcg.kappa();
    Layout l;
    if (subdivision && *subdivision < 1) throw InputError("subdivision override must be at least 1");
    l.d = subdivision.value_or(kappa * kappa * kappa);
    auto add = [&](std::string name) {
        l.names.push_back(std::move(name));
        return static_cast<Vertex>(l.names.size() - 1);
    };
    for (const auto& part : mcg.parts) {
        for (const auto& v : part) l.original[v] = add(v);
    }
    for (std::size_t e = 0; e < mcg.edges.size(); ++e) {
        std::vector<Vertex> path;
        Vertex prev = l.original.at(mcg.edges[e].first);
        for (std::size_t i = 1; i <= l.d; ++i) {
            Vertex x = add("sub:" + std::to_string(e) + ":" + std::to_string(i));
            l.edges.emplace_back(prev, x);
            path.push_back(x);
            prev = x;
        }
        l.edges.emplace_back(prev, l.original.at(mcg.edges[e].second));
        l.subdivided.push_back(std::move(path));
    }
    for (const auto& part : mcg.parts) {
        for (const auto& v : part) {
            Vertex p = add("pend:" + v);
            l.pendant[v] = p;
            l.edges.emplace_back(l.original.at(v), p);
        }
    }
    for (std::size_t i = 0; i < kappa; ++i) {
        for (std::size_t j = i + 1; j < kappa; ++j) {
            const std::string tag = std::to_string(i + 1) + ":" + std::to_string(j + 1);
            Vertex s = add("s:" + tag);
            Vertex t = add("t:" + tag);
            for (const auto& v : mcg.parts[i]) l.edges.emplace_back(s, l.original.at(v));
            for (const auto& v : mcg.parts[j]) l.edges.emplace_back(t, l.original.at(v));
            l.terminals[{i, j}] = {s, t};
        }
    }
    return l;
}

}  // namespace

McReduction reduce_mcc(const MulticoloredGraph& mcg, std::optional<std::size_t> subdivision) {
    Layout l = lay_out(mcg, subdivision);
    std::vector<Robot> robots;
    for (const auto& part : mcg.parts) {
        for (const auto& v : part) robots.push_back({l.original.at(v), l.original.at(v)});
    }
    for (const auto& [pair, st] : l.terminals) robots.push_back({st.first, st.second});
    McReduction out;
    out.instance = Instance(Graph(l.names.size(), l.edges), std::move(robots), reduction_budget(mcg.kappa(), l.d));
    out.names = std::move(l.names);
    out.subdivision = l.d;
    out.experimental = subdivision.has_value();
    return out;
}

Schedule witness_schedule(const MulticoloredGraph& mcg, const std::vector<std::string>& clique,
                          std::optional<std::size_t> subdivision) {
    Layout l = lay_out(mcg, subdivision);
    const std::size_t kappa = mcg.kappa();
    if (clique.size() != kappa) throw InputError("clique must list one vertex per part");
    const auto owner = part_of(mcg);
    for (std::size_t i = 0; i < kappa; ++i) {
        auto it = owner.find(clique[i]);
        if (it == owner.end() || it->second != i) {
            throw InputError("clique vertex '" + clique[i] + "' is not in part " + std::to_string(i + 1));
        }
    }
    auto edge_index = [&](const std::string& u, const std::string& v) -> std::optional<std::pair<std::size_t, bool>> {
        for (std::size_t e = 0; e < mcg.edges.size(); ++e) {
            if (mcg.edges[e].first == u && mcg.edges[e].second == v) return std::pair{e, true};
            if (mcg.edges[e].first == v && mcg.edges[e].second == u) return std::pair{e, false};
        }
        return std::nullopt;
    };

    std::vector<Vertex> pos;
    std::map<std::string, std::size_t> blocker;
    for (const auto& part : mcg.parts) {
        for (const auto& v : part) {
            blocker[v] = pos.size();
            pos.push_back(l.original.at(v));
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> clique_robot;
    for (const auto& [pair, st] : l.terminals) {
        clique_robot[pair] = pos.size();
        pos.push_back(st.first);
    }

    // Validate adjacency before building anything.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<Vertex>>> routes;
    for (const auto& [pair, st] : l.terminals) {
        const auto& wi = clique[pair.first];
        const auto& wj = clique[pair.second];
        auto e = edge_index(wi, wj);
        if (!e) throw InputError("clique vertices '" + wi + "' and '" + wj + "' are not adjacent");
        std::vector<Vertex> path{st.first, l.original.at(wi)};
        auto mid = l.subdivided[e->first];
        if (!e->second) std::reverse(mid.begin(), mid.end());
        path.insert(path.end(), mid.begin(), mid.end());
        path.push_back(l.original.at(wj));
        path.push_back(st.second);
        routes.emplace_back(pair, std::move(path));
    }

    Schedule s = Schedule::stationary(pos);
    for (const auto& w : clique) pos[blocker.at(w)] = l.pendant.at(w);
    s.push_step(pos);
    for (const auto& [pair, path] : routes) {
        const std::size_t r = clique_robot.at(pair);
        for (std::size_t i = 1; i < path.size(); ++i) {
            pos[r] = path[i];
            s.push_step(pos);
        }
    }
    for (const auto& w : clique) pos[blocker.at(w)] = l.original.at(w);
    s.push_step(pos);
    return s;
}

std::optional<std::vector<std::string>> find_multicolored_clique(const MulticoloredGraph& mcg) {
    validate_mcc(mcg);
    std::set<std::pair<std::string, std::string>> adj;
    for (const auto& [u, v] : mcg.edges) {
        adj.emplace(u, v);
        adj.emplace(v, u);
    }
    std::vector<std::string> pick;
    auto search = [&](auto& self, std::size_t i) -> bool {
        if (i == mcg.kappa()) return true;
        for (const auto& v : mcg.parts[i]) {
            bool ok = std::all_of(pick.begin(), pick.end(), [&](const std::string& u) { return adj.count({u, v}) > 0; });
            if (!ok) continue;
            pick.push_back(v);
            if (self(self, i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (search(search, 0)) return pick;
    return std::nullopt;
}

std::string render_names(const std::vector<std::string>& names) {
    std::ostringstream out;
    for (std::size_t i = 0; i < names.size(); ++i) out << i << " " << names[i] << "\n";
    return out.str();
}

}  // namespace coordmp
