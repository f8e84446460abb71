#pragma once

#include <string>
#include <vector>

#include "coordmp/instance.hpp"

namespace coordmp {

// One `step <t>: <robot>:<from>-><to> ...` line per time step (`-` when nobody moves).
std::string render_trace(const Instance& instance, const Schedule& schedule);

// Graphviz description of the instance; start and goal vertices are labelled.
std::string render_dot(const Instance& instance);

// One SVG document per configuration (horizon + 1 frames) on a circular layout.
std::vector<std::string> render_svg_frames(const Instance& instance, const Schedule& schedule);

}  // namespace coordmp
