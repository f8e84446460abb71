#include <doctest.h>

#include <algorithm>

#include "coordmp/render.hpp"
#include "support.hpp"

using namespace coordmp;
using namespace coordmp::testing;

namespace {

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("frames") {
    Instance in = p3_trivial();
    Schedule s({{0, 1, 2}});
    auto frames = render_svg_frames(in, s);
    CHECK(frames.size() == 3);
    CHECK(frames[0] != frames[1]);

    Schedule wait = Schedule::stationary({0}, 2);
    auto still = render_svg_frames(in, wait);
    REQUIRE(still.size() == 3);
    // Frames differ only in their time label.
    auto strip = [](std::string f) { return f.substr(f.find("</text>")); };
    CHECK(strip(still[0]) == strip(still[1]));
    CHECK(strip(still[1]) == strip(still[2]));
}

TEST_CASE("trace") {
    Instance in = star_instance();
    Schedule s({{1, 1, 0, 2}, {0, 3, 3, 3}});
    const std::string t = render_trace(in, s);
    CHECK(lines(t) == s.horizon());
    CHECK(t.find("step 1: 1:0->3") != std::string::npos);
    CHECK(t.find("step 3: 0:0->2") != std::string::npos);
    CHECK(render_trace(in, Schedule::stationary({1, 0}, 2)) == "step 1: -\nstep 2: -\n");
}

TEST_CASE("dot") {
    const std::string d = render_dot(star_instance());
    CHECK(d.rfind("graph", 0) == 0);
    CHECK(d.find("0 -- 1") != std::string::npos);
}
