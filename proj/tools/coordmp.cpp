#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "coordmp/approx.hpp"
#include "coordmp/error.hpp"
#include "coordmp/generate.hpp"
#include "coordmp/hardness.hpp"
#include "coordmp/io.hpp"
#include "coordmp/oracle.hpp"
#include "coordmp/render.hpp"
#include "coordmp/structure.hpp"
#include "coordmp/twdp.hpp"

namespace {

using namespace coordmp;

enum Exit : int { kYes = 0, kNo = 1, kInfeasible = 2, kInput = 3, kLimit = 4 };

struct SolveArgs {
    std::string instance;
    std::string alg = "oracle";
    std::string out;
    std::optional<std::size_t> checkpoint_budget;
    std::size_t visit_cap = 8;
    std::string td_file;
    unsigned threads = 1;
    std::size_t guess_cap = 1;
    std::optional<std::size_t> state_cap;
    DomainParams domain;
};

SearchLimits limits_from(const std::optional<std::size_t>& cap) {
    SearchLimits l = SearchLimits::defaults();
    if (cap) l.max_states = *cap;
    return l;
}

void summary(const std::string& alg, std::optional<Energy> energy, const std::string& status) {
    std::cout << "alg=" << alg << " energy=" << (energy ? std::to_string(*energy) : "none") << " status=" << status
              << "\n";
}

int emit_schedule(const SolveArgs& a, const Instance& in, const Schedule& s) {
    if (!a.out.empty()) write_file(a.out, render_schedule(s));
    const Energy e = energy(s);
    return in.budget() && e > *in.budget() ? kNo : kYes;
}

int from_search(const SolveArgs& a, const Instance& in, const SearchResult& r) {
    summary(a.alg, r.energy, to_string(r.status));
    switch (r.status) {
        case SearchStatus::optimal: return emit_schedule(a, in, *r.schedule);
        case SearchStatus::budget_exceeded:
            if (r.schedule && !a.out.empty()) write_file(a.out, render_schedule(*r.schedule));
            return kNo;
        case SearchStatus::infeasible: return kInfeasible;
        case SearchStatus::state_limit: return kLimit;
    }
    return kLimit;
}

int run_solve(const SolveArgs& a) {
    const Instance in = parse_instance(read_file(a.instance));
    const SearchLimits limits = limits_from(a.state_cap);
    if (a.alg == "oracle") return from_search(a, in, solve_exact(in, limits));
    if (a.alg == "critical") return from_search(a, in, solve_critical(in, limits));
    if (a.alg == "gcmp1") {
        std::cout << "c1=" << a.domain.c1 << " c2=" << a.domain.c2 << "\n";
        return from_search(a, in, solve_gcmp1(in, a.domain, limits));
    }
    if (a.alg == "approx") {
        ApproxOptions opts;
        opts.guess_cap = a.guess_cap;
        opts.limits = limits;
        ApproxReport rep = approximate(in, opts);
        std::optional<Energy> e;
        if (rep.status == ApproxStatus::ok) e = rep.energy;
        summary(a.alg, e, to_string(rep.status));
        switch (rep.status) {
            case ApproxStatus::ok: return emit_schedule(a, in, *rep.schedule);
            case ApproxStatus::infeasible: return kInfeasible;
            case ApproxStatus::unsupported_structure:
                if (rep.offending_vertex && rep.offending_tag) {
                    std::cerr << "unsupported structure at vertex " << *rep.offending_vertex << ": "
                              << describe(*rep.offending_tag) << "\n";
                }
                return kLimit;
            case ApproxStatus::state_limit: return kLimit;
        }
        return kLimit;
    }
    if (a.alg == "twdp") {
        TwdpOptions opts;
        opts.checkpoint_budget = a.checkpoint_budget;
        opts.visit_cap = a.visit_cap;
        opts.threads = a.threads;
        opts.limits = limits;
        if (!a.td_file.empty()) opts.decomposition = parse_td(read_file(a.td_file), in.graph(), in.terminals());
        TwdpResult r = solve_twdp(in, opts);
        std::cout << "width=" << r.width << " checkpoint_budget=" << r.checkpoint_budget << " rho=" << r.rho << "\n";
        summary(a.alg, r.energy, to_string(r.status));
        if (!a.out.empty()) std::cerr << "twdp reports the optimum only; no schedule written\n";
        switch (r.status) {
            case TwdpStatus::optimal: return kYes;
            case TwdpStatus::budget_exceeded: return kNo;
            case TwdpStatus::infeasible: return kInfeasible;
            case TwdpStatus::budget_limited:
                if (!r.energy) return kLimit;
                return in.budget() && *r.energy > *in.budget() ? kNo : kYes;
            case TwdpStatus::state_limit: return kLimit;
        }
        return kLimit;
    }
    throw InputError("unknown algorithm '" + a.alg + "'");
}

int run_validate(const std::string& inst, const std::string& sched) {
    const Instance in = parse_instance(read_file(inst));
    const Schedule s = parse_schedule(read_file(sched), in);
    ValidationResult v = validate_schedule(in, s);
    if (!v.ok()) {
        std::cout << "invalid violation=" << to_string(v.violation) << " step=" << v.step << " robots=";
        for (std::size_t i = 0; i < v.robots.size(); ++i) std::cout << (i ? "," : "") << v.robots[i];
        std::cout << "\n";
        std::cerr << v.message << "\n";
        return kInput;
    }
    std::cout << "valid energy=" << v.energy << " over_budget=" << (v.over_budget ? "yes" : "no") << "\n";
    return v.over_budget ? kNo : kYes;
}

int run_analyze(const std::string& inst, std::optional<int> k_opt) {
    const Instance in = parse_instance(read_file(inst));
    const Graph& g = in.graph();
    const int k = k_opt.value_or(static_cast<int>(in.robot_count()));
    const NiceMap nice = find_all_nice(g, k);
    std::cout << "vertex\ttag\twitness\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        VertexTypeTag tag = classify_vertex(g, static_cast<Vertex>(v), k, nice);
        std::cout << v << "\t" << to_string(tag.type) << "\t" << describe(tag) << "\n";
    }
    return kYes;
}

int run_preprocess(const std::string& inst, const std::string& out) {
    const Instance in = parse_instance(read_file(inst));
    BallRestriction b = energy_ball_restrict(in);
    if (b.no_instance) {
        std::cout << "status=no_instance reason=\"" << b.reason << "\"\n";
        return kNo;
    }
    const std::string text = render_instance(*b.reduced);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    std::cout << "status=reduced vertices=" << b.reduced->graph().vertex_count() << "/" << in.graph().vertex_count()
              << " robots=" << b.reduced->robot_count() << "/" << in.robot_count() << "\n";
    return kYes;
}

int run_reduce(const std::string& file, std::optional<std::size_t> subdiv, const std::string& out,
               const std::string& names_out, const std::string& witness_out) {
    const MulticoloredGraph mcg = parse_mcc(read_file(file));
    McReduction r = reduce_mcc(mcg, subdiv);
    const std::string text = render_instance(r.instance);
    if (out.empty()) std::cout << text;
    else write_file(out, text);
    if (!names_out.empty()) write_file(names_out, render_names(r.names));
    std::string clique = "none";
    if (!witness_out.empty()) {
        if (auto c = find_multicolored_clique(mcg)) {
            write_file(witness_out, render_schedule(witness_schedule(mcg, *c, subdiv)));
            clique.clear();
            for (const auto& v : *c) clique += (clique.empty() ? "" : ",") + v;
        }
    }
    std::cout << "kappa=" << mcg.kappa() << " vertices=" << r.instance.graph().vertex_count()
              << " robots=" << r.instance.robot_count() << " budget=" << *r.instance.budget()
              << " subdivision=" << r.subdivision << (r.experimental ? " experimental=yes" : "");
    if (!witness_out.empty()) std::cout << " clique=" << clique;
    std::cout << "\n";
    return kYes;
}

int run_render(const std::string& inst, const std::string& sched, const std::string& format, const std::string& out) {
    const Instance in = parse_instance(read_file(inst));
    if (format == "dot") {
        const std::string text = render_dot(in);
        if (out.empty()) std::cout << text;
        else write_file(out, text);
        return kYes;
    }
    if (sched.empty()) throw InputError("format '" + format + "' needs a schedule");
    const Schedule s = parse_schedule(read_file(sched), in);
    ValidationResult v = validate_schedule(in, s);
    if (!v.ok()) throw InputError("schedule is invalid: " + v.message);
    if (format == "trace") {
        const std::string text = render_trace(in, s);
        if (out.empty()) std::cout << text;
        else write_file(out, text);
        return kYes;
    }
    if (format == "svg") {
        if (out.empty()) throw InputError("svg frames need an output directory (-o)");
        std::filesystem::create_directories(out);
        auto frames = render_svg_frames(in, s);
        for (std::size_t t = 0; t < frames.size(); ++t) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%04zu.svg", t);
            write_file((std::filesystem::path(out) / name).string(), frames[t]);
        }
        std::cout << "frames=" << frames.size() << "\n";
        return kYes;
    }
    throw InputError("unknown render format '" + format + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-minimal coordinated motion planning on graphs"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Solve an instance");
    s->add_option("instance", solve.instance, "Instance file")->required();
    s->add_option("--alg", solve.alg, "oracle|critical|gcmp1|approx|twdp")
        ->check(CLI::IsMember({"oracle", "critical", "gcmp1", "approx", "twdp"}));
    s->add_option("-o,--out", solve.out, "Write the schedule here");
    s->add_option("--checkpoint-budget", solve.checkpoint_budget, "twdp: maximum checkpoint pairs per node");
    s->add_option("--visit-cap", solve.visit_cap, "twdp: visit cap in the default checkpoint budget");
    s->add_option("--td-file", solve.td_file, "twdp: tree decomposition file");
    s->add_option("--threads", solve.threads, "Worker cap")->check(CLI::PositiveNumber);
    s->add_option("--guess-cap", solve.guess_cap, "approx: haven selections tried")->check(CLI::PositiveNumber);
    s->add_option("--c1", solve.domain.c1, "gcmp1: hub degree constant")->check(CLI::PositiveNumber);
    s->add_option("--c2", solve.domain.c2, "gcmp1: domain depth constant")->check(CLI::PositiveNumber);
    s->add_option("--state-cap", solve.state_cap, "Configuration limit (overrides COORDMP_STATE_CAP)");

    std::string v_inst, v_sched;
    auto* v = app.add_subcommand("validate", "Check a schedule against an instance");
    v->add_option("instance", v_inst)->required();
    v->add_option("schedule", v_sched)->required();

    std::string a_inst;
    std::optional<int> a_k;
    auto* an = app.add_subcommand("analyze", "Per-vertex structure classification (TSV)");
    an->add_option("instance", a_inst)->required();
    an->add_option("--k", a_k, "Robot count to classify for (default: the instance's)");

    std::string p_inst, p_out;
    bool energy_ball = false;
    auto* p = app.add_subcommand("preprocess", "Shrink a budgeted instance");
    p->add_option("instance", p_inst)->required();
    p->add_flag("--energy-ball", energy_ball, "Restrict to budget balls around moving robots")->required();
    p->add_option("-o,--out", p_out);

    std::string r_file, r_out, r_names, r_witness;
    std::optional<std::size_t> r_subdiv;
    auto* r = app.add_subcommand("reduce", "Build hardness gadgets");
    auto* mcc = r->add_subcommand("mcc", "Multicolored clique to motion planning");
    r->require_subcommand(1);
    mcc->add_option("input", r_file, "Multicolored graph file")->required();
    mcc->add_option("--subdiv", r_subdiv, "Subdivisions per edge (experimental; default kappa^3)");
    mcc->add_option("-o,--out", r_out);
    mcc->add_option("--names", r_names, "Write the vertex name map here");
    mcc->add_option("--witness", r_witness, "Write a budget-meeting schedule here when a clique exists");

    GenParams gp;
    std::string g_kind, g_out;
    std::optional<Energy> g_budget;
    auto* g = app.add_subcommand("gen", "Generate an instance");
    g->set_help_flag("--help", "Print this help message and exit");  // -h is the grid height
    g->add_option("kind", g_kind, "path|cycle|star|grid|random-tree|random")->required();
    g->add_option("--n", gp.n);
    g->add_option("--w", gp.w);
    g->add_option("--h", gp.h);
    g->add_option("--robots", gp.robots);
    g->add_option("--free", gp.free_robots, "How many of the robots have no goal");
    g->add_option("--p", gp.edge_probability, "random: extra edge probability");
    g->add_option("--budget", g_budget);
    g->add_option("--seed", gp.seed);
    g->add_option("-o,--out", g_out);

    std::string rd_inst, rd_sched, rd_format = "trace", rd_out;
    auto* rd = app.add_subcommand("render", "Render an instance or schedule");
    rd->add_option("instance", rd_inst)->required();
    rd->add_option("schedule", rd_sched);
    rd->add_option("--format", rd_format, "trace|dot|svg")->check(CLI::IsMember({"trace", "dot", "svg"}));
    rd->add_option("-o,--out", rd_out, "Output file, or directory for svg frames");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInput;
    }

    try {
        if (*s) return run_solve(solve);
        if (*v) return run_validate(v_inst, v_sched);
        if (*an) return run_analyze(a_inst, a_k);
        if (*p) return run_preprocess(p_inst, p_out);
        if (*r) return run_reduce(r_file, r_subdiv, r_out, r_names, r_witness);
        if (*g) {
            gp.kind = parse_graph_kind(g_kind);
            gp.budget = g_budget;
            const std::string text = render_instance(generate(gp));
            if (g_out.empty()) std::cout << text;
            else write_file(g_out, text);
            return kYes;
        }
        if (*rd) return run_render(rd_inst, rd_sched, rd_format, rd_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const LimitError& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return kLimit;
    } catch (const UnsupportedStructure& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kLimit;
    }
    return kInput;
}
