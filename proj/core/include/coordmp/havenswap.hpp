#pragma once

#include <map>
#include <span>
#include <vector>

#include "coordmp/instance.hpp"
#include "coordmp/structure.hpp"

namespace coordmp {

// One robot moving along one edge; a move sequence runs one move per time step.
struct Move {
    RobotId robot = 0;
    Vertex from = kNoVertex;
    Vertex to = kNoVertex;

    Move reversed() const { return Move{robot, to, from}; }
    bool operator==(const Move&) const = default;
};

using MoveSequence = std::vector<Move>;

// Injective placement of robots on haven members.
struct HavenConfiguration {
    std::map<RobotId, Vertex> placement;

    bool operator==(const HavenConfiguration&) const = default;
};

// Moves confined to the haven members taking `from` to `to`. Both configurations must
// place the same robots (at most h.k of them) on distinct members. Throws InputError on
// mismatched robot sets, bad placements or a malformed haven.
MoveSequence haven_swap(const Graph& g, const Haven& h, const HavenConfiguration& from,
                        const HavenConfiguration& to);

// Replays moves; throws InputError at the first move that is not a legal single step
// into an empty adjacent vertex (or leaves the haven, when one is given).
HavenConfiguration apply_moves(const Graph& g, const Haven* h, HavenConfiguration config,
                               std::span<const Move> moves);

// Appends one time step per move to `schedule`; all other robots wait.
void append_moves(Schedule& schedule, std::span<const Move> moves);

// Drops move pairs u->v ... v->u by one robot when nothing in between touches u, v or
// that robot.
MoveSequence cancel_backtracks(MoveSequence moves);

// Rewrites a valid schedule so that each robot enters and leaves the haven at most once;
// robots inside the haven are rearranged by haven_swap during inserted wait phases.
Schedule normalize_around_haven(const Instance& instance, const Schedule& schedule, const Haven& h);

}  // namespace coordmp
