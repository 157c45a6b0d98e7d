#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dtnsim/geometry.hpp"
#include "dtnsim/ids.hpp"

namespace dtnsim {

using Bytes = std::int64_t;
/// Simulated time in clock steps. Seconds = ticks * clock_step.
using Tick = std::int64_t;

/// One node's copy of a message.
struct BundleCopy {
    BundleId bundle_id;
    NodeId source;
    NodeId destination;
    Bytes size{0};
    Tick created_at{0};
    Tick ttl{0};
    /// Hops travelled by this copy; zero only at the originating node.
    int hop_count{0};
    Position source_position;
    /// Position this copy spreads away from. Absent on a fresh source copy
    /// until the nearest-neighbour bootstrap has happened.
    std::optional<Position> anchor;
    /// Nodes this copy was offered to (including the node it came from).
    /// Never contains the holder itself.
    std::vector<NodeId> replicated_to;

    /// Sectors (A, B) that already received a relay from this copy.
    std::array<bool, 2> sector_served{false, false};
    /// Spray-and-wait tickets; zero for protocols that do not use them.
    std::uint32_t tickets{0};
    /// FirstContact record vector: every node that has held this copy.
    std::vector<NodeId> visited;

    [[nodiscard]] bool was_replicated_to(NodeId n) const {
        return std::find(replicated_to.begin(), replicated_to.end(), n) != replicated_to.end();
    }
    void mark_replicated_to(NodeId n) {
        if (!was_replicated_to(n)) {
            replicated_to.push_back(n);
        }
    }
    void unmark_replicated_to(NodeId n) { std::erase(replicated_to, n); }

    [[nodiscard]] bool is_endpoint(NodeId n) const { return n == source || n == destination; }
};

}  // namespace dtnsim
