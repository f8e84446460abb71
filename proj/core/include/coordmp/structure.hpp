#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coordmp/graph.hpp"
#include "coordmp/instance.hpp"

namespace coordmp {

// Three connected vertex sets meeting pairwise only at `center`; |c1|,|c2| >= k+1 and
// c3 = {center, x}. `members` is the radius-k neighbourhood of the center measured
// inside each of c1 and c2, plus x. All vectors are sorted.
struct Haven {
    Vertex center = kNoVertex;
    Vertex x = kNoVertex;
    std::vector<Vertex> c1;
    std::vector<Vertex> c2;
    std::vector<Vertex> c3;
    std::vector<Vertex> members;
    int k = 0;

    bool contains(Vertex v) const;
    bool operator==(const Haven&) const = default;
};

// Structural check of every haven invariant; returns a description of the first
// violation, or nullopt if the haven is well formed.
std::optional<std::string> haven_defect(const Graph& g, const Haven& h);

std::optional<Haven> is_nice(const Graph& g, Vertex v, int k);

// Indexed by vertex; engaged entries are the nice vertices.
using NiceMap = std::vector<std::optional<Haven>>;
NiceMap find_all_nice(const Graph& g, int k);
std::vector<Vertex> nice_vertices(const NiceMap& nice);

struct TwoPath {
    std::vector<Vertex> path;  // ordered from attach_a to attach_b
    Vertex attach_a = kNoVertex;
    Vertex attach_b = kNoVertex;
    bool degenerate = false;  // a cycle of degree-2 vertices, no attachments
};

// Maximal induced path of degree-2 vertices through v. Throws InputError unless deg(v)==2.
TwoPath two_path_around(const Graph& g, Vertex v);

enum class VertexType { nice, type1, type2, type3, type4 };

struct VertexTypeTag {
    VertexType type = VertexType::type4;
    Vertex near_nice = kNoVertex;  // type1: closest nice vertex
    int near_distance = 0;
    TwoPath path;                  // type2, type3, and type4 when split along a path
    std::vector<Vertex> pocket;    // type3
    Vertex nice_end = kNoVertex;   // type3
    std::string detail;            // type4 summary
};

// Least-index statement satisfied by v. Throws std::logic_error if none applies.
VertexTypeTag classify_vertex(const Graph& g, Vertex v, int k);
VertexTypeTag classify_vertex(const Graph& g, Vertex v, int k, const NiceMap& nice);

std::string to_string(VertexType t);
std::string describe(const VertexTypeTag& tag);

struct DomainParams {
    int c1 = 1;
    int c2 = 2;
};

// Depth-bounded BFS around the robot's start that does not expand through vertices of
// degree >= c1*k^4+k+1; such hubs keep that many lowest-id neighbours. nullopt when no
// nice vertex lies within distance lambda of the start.
std::optional<std::vector<Vertex>> compute_motion_domain(const Instance& instance, RobotId robot,
                                                         int lambda, DomainParams params = {});
std::optional<std::vector<Vertex>> compute_motion_domain(const Instance& instance, RobotId robot,
                                                         int lambda, DomainParams params,
                                                         const NiceMap& nice);

}  // namespace coordmp
