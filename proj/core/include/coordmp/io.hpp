#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coordmp/instance.hpp"

namespace coordmp {

struct ParsedInstance {
    Instance instance;
    // Names in first-appearance order when the file used non-numeric vertex tokens.
    std::vector<std::string> vertex_names;
};

// Instance text format, '#' starts a comment:
//   gcmp 1 / n <N> / e <u> <v> / r <id> <start> <goal|-> / budget <l>
ParsedInstance parse_instance_with_names(std::string_view text);
Instance parse_instance(std::string_view text);
std::string render_instance(const Instance& instance);

// Schedule text format: `sched <k> <t>` then `robot <id>: v0 ... vt` per robot.
Schedule parse_schedule(std::string_view text, const Instance& instance);
std::string render_schedule(const Schedule& schedule);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace coordmp
