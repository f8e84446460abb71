#include "coordmp/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "coordmp/error.hpp"

namespace coordmp {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(std::move(tok));
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

std::optional<long long> to_integer(std::string_view tok) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

long long require_integer(const Line& line, std::size_t idx, const char* what) {
    if (idx >= line.tokens.size()) throw ParseError(line.number, std::string("missing ") + what);
    auto v = to_integer(line.tokens[idx]);
    if (!v) throw ParseError(line.number, std::string("expected integer ") + what);
    return *v;
}

void require_arity(const Line& line, std::size_t n) {
    if (line.tokens.size() != n) {
        throw ParseError(line.number, "'" + line.tokens[0] + "' expects " + std::to_string(n - 1) +
                                          " argument(s)");
    }
}

// Resolves vertex tokens either as numeric ids or, in named mode, as names mapped to ids
// in first-appearance order.
class VertexResolver {
public:
    VertexResolver(bool named, std::size_t n) : named_(named), n_(n) {}

    Vertex resolve(const Line& line, const std::string& tok) {
        if (!named_) {
            auto v = to_integer(tok);
            if (!v) throw ParseError(line.number, "expected vertex id, got '" + tok + "'");
            if (*v < 0 || static_cast<std::size_t>(*v) >= n_) {
                throw ParseError(line.number, "vertex " + tok + " out of range");
            }
            return static_cast<Vertex>(*v);
        }
        auto it = ids_.find(tok);
        if (it != ids_.end()) return it->second;
        if (names_.size() >= n_) {
            throw ParseError(line.number, "more vertex names than n: '" + tok + "'");
        }
        auto id = static_cast<Vertex>(names_.size());
        ids_.emplace(tok, id);
        names_.push_back(tok);
        return id;
    }

    std::vector<std::string> take_names() { return std::move(names_); }

private:
    bool named_;
    std::size_t n_;
    std::map<std::string, Vertex> ids_;
    std::vector<std::string> names_;
};

}  // namespace

ParsedInstance parse_instance_with_names(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty instance file");
    const Line& header = lines.front();
    if (header.tokens.size() != 2 || header.tokens[0] != "gcmp" || header.tokens[1] != "1") {
        throw ParseError(header.number, "expected header 'gcmp 1'");
    }
    std::optional<std::size_t> n;
    std::size_t n_line = 0;
    bool named = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& key = line.tokens[0];
        if (key == "n") {
            require_arity(line, 2);
            if (n) throw ParseError(line.number, "duplicate 'n' line");
            long long v = require_integer(line, 1, "vertex count");
            if (v < 0) throw ParseError(line.number, "negative vertex count");
            n = static_cast<std::size_t>(v);
            n_line = line.number;
        } else if (key == "e") {
            for (std::size_t t = 1; t < line.tokens.size(); ++t) named |= !to_integer(line.tokens[t]);
        } else if (key == "r") {
            for (std::size_t t = 2; t < line.tokens.size(); ++t) {
                if (t == 3 && line.tokens[t] == "-") continue;
                named |= !to_integer(line.tokens[t]);
            }
        }
    }
    if (!n) throw ParseError(header.number, "missing 'n' line");
    (void)n_line;

    VertexResolver resolver(named, *n);
    std::vector<Edge> edges;
    std::map<Edge, std::size_t> seen_edges;
    std::map<long long, Robot> robots;
    std::map<Vertex, long long> start_owner;
    std::map<Vertex, long long> goal_owner;
    std::optional<Energy> budget;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& key = line.tokens[0];
        if (key == "n") continue;
        if (key == "e") {
            require_arity(line, 3);
            Vertex u = resolver.resolve(line, line.tokens[1]);
            Vertex v = resolver.resolve(line, line.tokens[2]);
            if (u == v) throw ParseError(line.number, "self-loop");
            Edge e{std::min(u, v), std::max(u, v)};
            if (!seen_edges.emplace(e, line.number).second) {
                throw ParseError(line.number, "duplicate edge");
            }
            edges.push_back(e);
        } else if (key == "r") {
            require_arity(line, 4);
            long long id = require_integer(line, 1, "robot id");
            if (id < 0) throw ParseError(line.number, "negative robot id");
            if (robots.count(id)) throw ParseError(line.number, "duplicate robot id");
            Robot r;
            r.start = resolver.resolve(line, line.tokens[2]);
            if (line.tokens[3] != "-") r.goal = resolver.resolve(line, line.tokens[3]);
            if (!start_owner.emplace(r.start, id).second) {
                throw ParseError(line.number, "duplicate start vertex");
            }
            if (r.goal && !goal_owner.emplace(*r.goal, id).second) {
                throw ParseError(line.number, "duplicate goal vertex");
            }
            robots.emplace(id, r);
        } else if (key == "budget") {
            require_arity(line, 2);
            if (budget) throw ParseError(line.number, "duplicate budget");
            long long b = require_integer(line, 1, "budget");
            if (b < 0) throw ParseError(line.number, "negative budget");
            budget = b;
        } else if (key == "gcmp") {
            throw ParseError(line.number, "header repeated");
        } else {
            throw ParseError(line.number, "unknown directive '" + key + "'");
        }
    }
    std::vector<Robot> ordered;
    ordered.reserve(robots.size());
    for (const auto& [id, r] : robots) {
        if (id != static_cast<long long>(ordered.size())) {
            throw ParseError(header.number, "robot ids must be 0..k-1 without gaps");
        }
        ordered.push_back(r);
    }
    ParsedInstance out{Instance(Graph(*n, edges), std::move(ordered), budget), resolver.take_names()};
    return out;
}

Instance parse_instance(std::string_view text) { return parse_instance_with_names(text).instance; }

std::string render_instance(const Instance& instance) {
    std::ostringstream out;
    out << "gcmp 1\n";
    out << "n " << instance.graph().vertex_count() << "\n";
    for (auto [u, v] : instance.graph().edges()) out << "e " << u << " " << v << "\n";
    for (std::size_t i = 0; i < instance.robot_count(); ++i) {
        const Robot& r = instance.robots()[i];
        out << "r " << i << " " << r.start << " ";
        if (r.goal) {
            out << *r.goal;
        } else {
            out << "-";
        }
        out << "\n";
    }
    if (instance.budget()) out << "budget " << *instance.budget() << "\n";
    return out.str();
}

Schedule parse_schedule(std::string_view text, const Instance& instance) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty schedule file");
    const Line& header = lines.front();
    if (header.tokens.size() != 3 || header.tokens[0] != "sched") {
        throw ParseError(header.number, "expected header 'sched <k> <t>'");
    }
    long long k = require_integer(header, 1, "robot count");
    long long t = require_integer(header, 2, "horizon");
    if (k < 0 || t < 0) throw ParseError(header.number, "negative header value");
    if (static_cast<std::size_t>(k) != instance.robot_count()) {
        throw ParseError(header.number, "schedule robot count differs from instance");
    }
    std::vector<std::optional<Route>> routes(static_cast<std::size_t>(k));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "robot" || line.tokens.size() < 2) {
            throw ParseError(line.number, "expected 'robot <id>: v0 ... vt'");
        }
        std::string id_tok = line.tokens[1];
        if (id_tok.empty() || id_tok.back() != ':') throw ParseError(line.number, "missing ':'");
        id_tok.pop_back();
        auto id = to_integer(id_tok);
        if (!id || *id < 0 || *id >= k) throw ParseError(line.number, "robot id out of range");
        auto& slot = routes[static_cast<std::size_t>(*id)];
        if (slot) throw ParseError(line.number, "duplicate robot line");
        if (line.tokens.size() - 2 != static_cast<std::size_t>(t + 1)) {
            throw ParseError(line.number, "ragged horizon: expected " + std::to_string(t + 1) +
                                              " positions, got " +
                                              std::to_string(line.tokens.size() - 2));
        }
        Route route;
        route.reserve(static_cast<std::size_t>(t + 1));
        for (std::size_t p = 2; p < line.tokens.size(); ++p) {
            auto v = to_integer(line.tokens[p]);
            if (!v || !instance.graph().valid(static_cast<Vertex>(*v)) || *v > INT32_MAX) {
                throw ParseError(line.number, "invalid vertex '" + line.tokens[p] + "'");
            }
            route.push_back(static_cast<Vertex>(*v));
        }
        slot = std::move(route);
    }
    std::vector<Route> out;
    for (std::size_t i = 0; i < routes.size(); ++i) {
        if (!routes[i]) throw ParseError(header.number, "missing route for robot " + std::to_string(i));
        out.push_back(std::move(*routes[i]));
    }
    if (out.empty()) return Schedule::stationary({}, static_cast<std::size_t>(t));
    return Schedule(std::move(out));
}

std::string render_schedule(const Schedule& schedule) {
    std::ostringstream out;
    out << "sched " << schedule.robot_count() << " " << schedule.horizon() << "\n";
    for (std::size_t i = 0; i < schedule.robot_count(); ++i) {
        out << "robot " << i << ":";
        for (Vertex v : schedule.routes()[i]) out << " " << v;
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << contents;
}

}  // namespace coordmp
