#include "coordmp/render.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace coordmp {

std::string render_trace(const Instance& instance, const Schedule& schedule) {
    (void)instance;
    std::ostringstream out;
    for (std::size_t t = 1; t <= schedule.horizon(); ++t) {
        out << "step " << t << ":";
        bool any = false;
        for (std::size_t r = 0; r < schedule.robot_count(); ++r) {
            const auto id = static_cast<RobotId>(r);
            if (schedule.at(id, t - 1) != schedule.at(id, t)) {
                out << " " << r << ":" << schedule.at(id, t - 1) << "->" << schedule.at(id, t);
                any = true;
            }
        }
        if (!any) out << " -";
        out << "\n";
    }
    return out.str();
}

std::string render_dot(const Instance& instance) {
    const Graph& g = instance.graph();
    std::vector<std::string> labels(g.vertex_count());
    for (std::size_t r = 0; r < instance.robot_count(); ++r) {
        const Robot& robot = instance.robots()[r];
        labels[static_cast<std::size_t>(robot.start)] += " s" + std::to_string(r);
        if (robot.goal) labels[static_cast<std::size_t>(*robot.goal)] += " t" + std::to_string(r);
    }
    std::ostringstream out;
    out << "graph instance {\n  node [shape=circle];\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        out << "  " << v << " [label=\"" << v << labels[v] << "\"";
        if (!labels[v].empty()) out << ", style=filled, fillcolor=lightgray";
        out << "];\n";
    }
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

const char* colour(std::size_t r) {
    static constexpr const char* palette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
                                              "#42d4f4", "#f032e6", "#bfef45", "#469990", "#9a6324"};
    return palette[r % std::size(palette)];
}

}  // namespace

std::vector<std::string> render_svg_frames(const Instance& instance, const Schedule& schedule) {
    const Graph& g = instance.graph();
    const std::size_t n = g.vertex_count();
    constexpr double size = 400.0;
    constexpr double centre = size / 2;
    const double radius = n <= 1 ? 0.0 : size * 0.4;
    std::vector<std::pair<double, double>> at(n);
    for (std::size_t v = 0; v < n; ++v) {
        const double angle = 2 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(std::max<std::size_t>(n, 1));
        at[v] = {centre + radius * std::cos(angle), centre + radius * std::sin(angle)};
    }
    std::vector<std::string> frames;
    for (std::size_t t = 0; t <= schedule.horizon(); ++t) {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
        out << "<text x=\"8\" y=\"18\" font-size=\"14\">t=" << t << "</text>\n";
        for (auto [u, v] : g.edges()) {
            auto [x1, y1] = at[static_cast<std::size_t>(u)];
            auto [x2, y2] = at[static_cast<std::size_t>(v)];
            out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
                << "\" stroke=\"#999\"/>\n";
        }
        for (std::size_t v = 0; v < n; ++v) {
            out << "<circle cx=\"" << at[v].first << "\" cy=\"" << at[v].second
                << "\" r=\"12\" fill=\"white\" stroke=\"#333\"/>\n";
            out << "<text x=\"" << at[v].first << "\" y=\"" << at[v].second + 26
                << "\" font-size=\"10\" text-anchor=\"middle\">" << v << "</text>\n";
        }
        for (std::size_t r = 0; r < schedule.robot_count(); ++r) {
            auto [x, y] = at[static_cast<std::size_t>(schedule.at(static_cast<RobotId>(r), t))];
            out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"8\" fill=\"" << colour(r) << "\"/>\n";
        }
        out << "</svg>\n";
        frames.push_back(out.str());
    }
    return frames;
}

}  // namespace coordmp
