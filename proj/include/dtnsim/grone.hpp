#pragma once
/**
 * GRONE: geographic routing from one-hop neighbour positions.
 *
 * A node only knows its own position and the positions its neighbours
 * advertised in their last Hello. Each message copy spreads away from its
 * anchor: the node splits the forward half disc into two quarter sectors and
 * replicates to the highest-utility neighbour in each. When two holders of
 * the same message come closer than half the radio range (their coverage
 * overlap exceeds roughly 70% of a disc), one of them drops its copy.
 *
 * The functions here are pure: they take the protocol state explicitly and
 * return decisions. GroneRouter (grone_router.hpp) drives them from the
 * simulation engine.
 */

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dtnsim/bundle.hpp"
#include "dtnsim/geometry.hpp"
#include "dtnsim/ids.hpp"

namespace dtnsim::grone {

struct HelloMessage {
    NodeId sender;
    Position sender_position;
    /// Sorted, duplicate-free ids of the bundles the sender buffers.
    std::vector<BundleId> summary_vector;
};

struct NeighborEntry {
    NodeId eid;
    Position position;
    Tick last_hello{0};
    int missed_count{0};
};

/// Neighbours learnt from Hello messages, ordered by EID.
class NeighborTable {
public:
    using Map = std::map<NodeId, NeighborEntry>;

    /// Inserts or refreshes an entry; returns true if it was not present.
    bool upsert(NodeId eid, Position pos, Tick now);
    bool erase(NodeId eid) { return entries_.erase(eid) > 0; }

    [[nodiscard]] const NeighborEntry* find(NodeId eid) const;
    [[nodiscard]] NeighborEntry* find(NodeId eid);
    [[nodiscard]] bool contains(NodeId eid) const { return entries_.contains(eid); }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }

    [[nodiscard]] Map::const_iterator begin() const { return entries_.begin(); }
    [[nodiscard]] Map::const_iterator end() const { return entries_.end(); }
    [[nodiscard]] Map::iterator begin() { return entries_.begin(); }
    [[nodiscard]] Map::iterator end() { return entries_.end(); }

private:
    Map entries_;
};

struct GroneConfig {
    Meters radius{100.0};
    Tick hello_interval{10};
    /// Holders closer than this purge one copy. Default is radius / 2.
    Meters purge_distance{50.0};

    /// Overlap of two discs at purge_distance as a fraction of one disc
    /// (about 0.69 at R/2).
    [[nodiscard]] double margin_fraction() const;
    /// Throws std::invalid_argument unless 0 < purge_distance < radius.
    void validate() const;
};

/// Utility of replicating from frame.apex to `candidate`:
///   distance / (2R) + (1 + sqrt2/2) * (cos(dir, bisector) - sqrt2/2)
/// where the bisector is that of the sector the candidate falls in. Lies in
/// [0, 1] for in-sector candidates; a co-located candidate scores 0.
/// Candidates behind the apex are scored against the nearer bisector and can
/// come out negative. Throws std::invalid_argument beyond the radius.
[[nodiscard]] double utility(const SectorFrame& frame, Position candidate);

/// Who should receive the source's first copy: the nearest neighbour within
/// range (ties to the smaller EID). Requires that `self` is the source, the
/// copy has no anchor yet and at least two neighbours are known.
[[nodiscard]] std::optional<NodeId> bootstrap_source(NodeId self, Position self_pos,
                                                     const BundleCopy& copy,
                                                     const NeighborTable& table, Meters radius);

struct RelayChoice {
    NodeId eid;
    Sector sector{Sector::A};
    double utility{0.0};
};

/// Best neighbour per forward sector (at most one each, A before B).
/// Neighbours out of range, behind the apex, already offered the copy, or
/// equal to the bundle's source are skipped; utility ties go to the smaller
/// EID. Requires an anchor on the copy.
[[nodiscard]] std::vector<RelayChoice> select_relays(Position self_pos, const BundleCopy& copy,
                                                     const NeighborTable& table, Meters radius);

/// Single-neighbour fallback: that neighbour, regardless of geometry, unless
/// it already got the copy or is the bundle's source.
[[nodiscard]] std::optional<NodeId> naive_replicate(const BundleCopy& copy, const NeighborTable& table);

/// True when `self` should drop its copy of a bundle that `peer` also holds.
/// Endpoints (source or destination) never drop; otherwise the larger EID
/// drops, or the non-endpoint side when the peer is an endpoint.
[[nodiscard]] bool yields_copy_to(NodeId self, NodeId peer, const BundleCopy& copy);

struct HelloOutcome {
    bool new_neighbor{false};
    /// Bundles the receiver must remove from its buffer.
    std::vector<BundleId> purge;
};

/// Applies a received Hello: refreshes the sender's table entry and, when the
/// sender is within the purge distance, lists the shared bundles this node
/// yields. The caller removes the listed copies.
[[nodiscard]] HelloOutcome on_hello(NodeId self, Position self_pos, NeighborTable& table,
                                    std::span<const BundleCopy> buffer, const HelloMessage& hello,
                                    Tick now, const GroneConfig& config);

/// Once per Hello interval: bumps the miss counter of every entry not heard
/// within the last interval and removes entries missed more than twice.
std::vector<NodeId> expire_neighbors(NeighborTable& table, Tick now, Tick hello_interval);

struct Delivery {
    BundleId bundle;
    NodeId destination;
};

/// Buffered bundles whose destination is a live neighbour, in buffer order.
[[nodiscard]] std::vector<Delivery> deliver_pass(std::span<const BundleCopy> buffer,
                                                 const NeighborTable& table);

}  // namespace dtnsim::grone
