#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "coordmp/io.hpp"

namespace fs = std::filesystem;
using namespace coordmp;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

fs::path scratch() {
    fs::path p = COORDMP_SCRATCH;
    fs::create_directories(p);
    return p;
}

fs::path put(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    write_file(p.string(), text);
    return p;
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const std::string cmd = std::string("\"") + COORDMP_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out.string());
    return r;
}

const std::string kP3 = "gcmp 1\nn 3\ne 0 1\ne 1 2\nr 0 0 2\nbudget 2\n";
const std::string kBlocking = "gcmp 1\nn 3\ne 0 1\ne 1 2\nr 0 0 2\nr 1 1 -\n";

}  // namespace

TEST_CASE("solve") {
    const auto inst = put("p3.gcmp", kP3);
    const auto sched = scratch() / "p3.sched";
    Run r = run("solve --alg oracle " + inst.string() + " -o " + sched.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("alg=oracle energy=2 status=optimal") != std::string::npos);
    CHECK(run("validate " + inst.string() + " " + sched.string()).code == 0);

    const auto tight = put("p3_tight.gcmp", "gcmp 1\nn 3\ne 0 1\ne 1 2\nr 0 0 2\nbudget 1\n");
    CHECK(run("solve --alg oracle " + tight.string()).code == 1);

    const auto block = put("blocking.gcmp", kBlocking);
    CHECK(run("solve --alg oracle " + block.string()).code == 2);
    CHECK(run("solve --alg twdp " + block.string()).code == 2);

    for (const char* alg : {"critical", "gcmp1", "approx", "twdp"}) {
        Run a = run(std::string("solve --alg ") + alg + " " + inst.string());
        CHECK(a.code == 0);
        CHECK(a.out.find("energy=2") != std::string::npos);
    }
}

TEST_CASE("input errors") {
    const auto bad = put("bad.gcmp", "gcmp 1\nn 2\ne 0 7\n");
    CHECK(run("solve " + bad.string()).code == 3);
    CHECK(run("solve " + (scratch() / "missing.gcmp").string()).code == 3);
}

TEST_CASE("limits") {
    const auto inst = put("p3_limit.gcmp", kP3);
    CHECK(run("solve --alg oracle --state-cap 1 " + inst.string()).code == 4);
}

TEST_CASE("validate reports an edge swap") {
    const auto inst = put("swap.gcmp", "gcmp 1\nn 2\ne 0 1\nr 0 0 1\nr 1 1 0\n");
    const auto sched = put("swap.sched", "sched 2 1\nrobot 0: 0 1\nrobot 1: 1 0\n");
    Run r = run("validate " + inst.string() + " " + sched.string());
    CHECK(r.code == 3);
    CHECK(r.out.find("edge-swap") != std::string::npos);
    CHECK(r.out.find("step=1") != std::string::npos);
}

TEST_CASE("gen") {
    Run a = run("gen path --n 3 --robots 1 --seed 0");
    Run b = run("gen path --n 3 --robots 1 --seed 0");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(parse_instance(a.out).graph().vertex_count() == 3);

    Run grid = run("gen grid --w 3 --h 2 --robots 2");
    CHECK(parse_instance(grid.out).graph().vertex_count() == 6);

    Run r1 = run("gen random --n 9 --robots 3 --seed 4");
    Run r2 = run("gen random --n 9 --robots 3 --seed 4");
    CHECK(r1.out == r2.out);

    CHECK(run("gen path --n 2 --robots 3").code == 3);
}

TEST_CASE("render") {
    const auto inst = put("render.gcmp", kP3);
    const auto sched = put("render.sched", "sched 1 2\nrobot 0: 0 1 2\n");
    Run t = run("render --format trace " + inst.string() + " " + sched.string());
    CHECK(t.code == 0);
    CHECK(t.out == "step 1: 0:0->1\nstep 2: 0:1->2\n");

    const fs::path frames = scratch() / "frames";
    fs::remove_all(frames);
    CHECK(run("render --format svg " + inst.string() + " " + sched.string() + " -o " + frames.string()).code == 0);
    std::size_t count = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(frames)) ++count;
    CHECK(count == 3);

    const auto broken = put("broken.sched", "sched 1 1\nrobot 0: 0 2\n");
    CHECK(run("render --format trace " + inst.string() + " " + broken.string()).code == 3);
}

TEST_CASE("reduce and preprocess") {
    const auto mcc = put("edge.mcc", "mcc 1\npart 1 a\npart 2 b\nedge a b\n");
    const auto out = scratch() / "edge.gcmp";
    const auto witness = scratch() / "edge.sched";
    CHECK(run("reduce mcc " + mcc.string() + " -o " + out.string() + " --witness " + witness.string()).code == 0);
    Run v = run("validate " + out.string() + " " + witness.string());
    CHECK(v.code == 0);
    CHECK(v.out.find("energy=15") != std::string::npos);

    const auto many = put("many.gcmp", "gcmp 1\nn 4\ne 0 1\ne 1 2\ne 2 3\nr 0 0 1\nr 1 2 3\nbudget 1\n");
    CHECK(run("preprocess --energy-ball " + many.string()).code == 1);
}

TEST_CASE("analyze") {
    const auto star = put("star.gcmp", "gcmp 1\nn 4\ne 0 1\ne 0 2\ne 0 3\nr 0 1 2\n");
    Run r = run("analyze " + star.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("nice") != std::string::npos);
}
