#include <algorithm>
#include <set>

#include "coordmp/twdp.hpp"

namespace coordmp {

ConfigTuple Chain::tuple(std::size_t i) const {
    auto first = cells.begin() + static_cast<std::ptrdiff_t>(i * width);
    return ConfigTuple(first, first + static_cast<std::ptrdiff_t>(width));
}

CheckpointSequence Chain::pairs() const {
    CheckpointSequence out;
    for (std::size_t i = 0; i + 1 < length(); ++i) out.emplace_back(tuple(i), tuple(i + 1));
    return out;
}

std::size_t ChainHash::operator()(const Chain& c) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ c.width;
    for (Vertex v : c.cells) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

GoodnessReport check_goodness(const CheckpointSequence& seq, const std::vector<Vertex>& bag, const Graph& g,
                              const Instance& instance) {
    std::set<int> bad;
    const std::size_t k = instance.robot_count();
    auto in_bag = [&](Vertex v) { return std::find(bag.begin(), bag.end(), v) != bag.end(); };

    // Entries outside Z and the two symbols, or tuples of the wrong width, make the
    // sequence unreadable; they are charged to the occupancy property.
    for (const auto& [a, b] : seq) {
        for (const ConfigTuple* t : {&a, &b}) {
            if (t->size() != k) {
                bad.insert(6);
                continue;
            }
            for (Vertex v : *t) {
                if (v != kUp && v != kDown && !in_bag(v)) bad.insert(6);
            }
        }
    }
    if (!bad.empty()) return {{bad.begin(), bad.end()}};

    if (seq.empty()) {
        bad.insert(2);
        return {{bad.begin(), bad.end()}};
    }

    // 1: fixed first tuple, goal coordinates of the last.
    if (seq.front().first != instance.starts()) bad.insert(1);
    const ConfigTuple& last = seq.back().second;
    std::vector<Vertex> goals;
    for (std::size_t r = 0; r < k; ++r) {
        const auto& goal = instance.robots()[r].goal;
        if (goal) {
            goals.push_back(*goal);
            if (last[r] != *goal) bad.insert(1);
        }
    }
    for (std::size_t r = 0; r < k; ++r) {
        if (instance.robots()[r].is_free() && std::find(goals.begin(), goals.end(), last[r]) != goals.end()) bad.insert(1);
    }

    // 3: in pair form the tuples between checkpoints coincide, so pairs must link up.
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i].second != seq[i + 1].first) bad.insert(3);
    }

    for (const auto& [a, b] : seq) {
        bool touches = false;
        for (std::size_t j = 0; j < k; ++j) {
            if (a[j] != b[j] && (in_bag(a[j]) || in_bag(b[j]))) touches = true;
            if ((a[j] == kUp && b[j] == kDown) || (a[j] == kDown && b[j] == kUp)) bad.insert(5);
        }
        if (!touches) bad.insert(4);

        for (const ConfigTuple* t : {&a, &b}) {
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t i = j + 1; i < k; ++i) {
                    if ((*t)[j] >= 0 && (*t)[j] == (*t)[i]) bad.insert(6);
                }
            }
        }

        for (std::size_t j = 0; j < k; ++j) {
            if (a[j] == b[j] || b[j] < 0) continue;
            for (std::size_t i = 0; i < k; ++i) {
                if (i != j && a[i] == b[j] && b[i] == b[j]) bad.insert(7);
            }
        }

        for (std::size_t j = 0; j < k; ++j) {
            if (a[j] < 0 || b[j] < 0 || a[j] == b[j]) continue;
            if (!g.has_edge(a[j], b[j])) bad.insert(8);
            for (std::size_t i = 0; i < k; ++i) {
                if (i != j && a[i] == b[j] && b[i] == a[j]) bad.insert(8);
            }
        }
    }
    return {{bad.begin(), bad.end()}};
}

bool is_good_sequence(const CheckpointSequence& seq, const std::vector<Vertex>& bag, const Graph& g,
                      const Instance& instance) {
    return check_goodness(seq, bag, g, instance).good();
}

}  // namespace coordmp
