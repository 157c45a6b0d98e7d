#include "dtnsim/grone.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtnsim::grone {

bool NeighborTable::upsert(NodeId eid, Position pos, Tick now) {
    auto [it, inserted] = entries_.try_emplace(eid, NeighborEntry{eid, pos, now, 0});
    if (!inserted) {
        it->second.position = pos;
        it->second.last_hello = now;
        it->second.missed_count = 0;
    }
    return inserted;
}

const NeighborEntry* NeighborTable::find(NodeId eid) const {
    auto it = entries_.find(eid);
    return it == entries_.end() ? nullptr : &it->second;
}

NeighborEntry* NeighborTable::find(NodeId eid) {
    auto it = entries_.find(eid);
    return it == entries_.end() ? nullptr : &it->second;
}

double GroneConfig::margin_fraction() const {
    return lens_area(purge_distance, radius) / (std::numbers::pi * radius * radius);
}

void GroneConfig::validate() const {
    if (!(radius > 0.0) || !(purge_distance > 0.0) || !(purge_distance < radius)) {
        throw std::invalid_argument("GroneConfig: need 0 < purge_distance < radius");
    }
    if (hello_interval < 1) {
        throw std::invalid_argument("GroneConfig: hello_interval must be at least one tick");
    }
}

double utility(const SectorFrame& frame, Position candidate) {
    const Vec2 dir = candidate - frame.apex;
    const double d = dir.norm();
    if (d > frame.radius) {
        throw std::invalid_argument("utility: candidate is beyond the radio range");
    }
    Vec2 bisector;
    switch (forward_sector_of(frame, candidate)) {
    case Sector::A:
        bisector = frame.bisector_a;
        break;
    case Sector::B:
        bisector = frame.bisector_b;
        break;
    case Sector::Outside:
        bisector = dot(dir, frame.bisector_a) >= dot(dir, frame.bisector_b) ? frame.bisector_a
                                                                             : frame.bisector_b;
        break;
    }
    const double cosine = direction_cosine(dir, bisector);
    return d / (2.0 * frame.radius) + (1.0 + kCosQuarterPi) * (cosine - kCosQuarterPi);
}

std::optional<NodeId> bootstrap_source(NodeId self, Position self_pos, const BundleCopy& copy,
                                       const NeighborTable& table, Meters radius) {
    if (self != copy.source || copy.anchor || table.size() < 2) {
        return std::nullopt;
    }
    std::optional<NodeId> best;
    double best_d = 0.0;
    for (const auto& [eid, entry] : table) {
        if (copy.was_replicated_to(eid)) {
            continue;
        }
        const double d = distance(self_pos, entry.position);
        if (d > radius) {
            continue;
        }
        // Table iterates in EID order, so strict < keeps the smaller EID on ties.
        if (!best || d < best_d) {
            best = eid;
            best_d = d;
        }
    }
    return best;
}

std::vector<RelayChoice> select_relays(Position self_pos, const BundleCopy& copy,
                                       const NeighborTable& table, Meters radius) {
    if (!copy.anchor) {
        return {};
    }
    const SectorFrame frame = SectorFrame::make(*copy.anchor, self_pos, radius);
    std::optional<RelayChoice> best[2];
    for (const auto& [eid, entry] : table) {
        if (eid == copy.source || copy.was_replicated_to(eid)) {
            continue;
        }
        if (distance(self_pos, entry.position) > radius) {
            continue;
        }
        const Sector sector = forward_sector_of(frame, entry.position);
        if (sector == Sector::Outside) {
            continue;
        }
        const double u = utility(frame, entry.position);
        auto& slot = best[sector == Sector::A ? 0 : 1];
        if (!slot || u > slot->utility) {
            slot = RelayChoice{eid, sector, u};
        }
    }
    std::vector<RelayChoice> out;
    for (const auto& slot : best) {
        if (slot) {
            out.push_back(*slot);
        }
    }
    return out;
}

std::optional<NodeId> naive_replicate(const BundleCopy& copy, const NeighborTable& table) {
    if (table.size() != 1) {
        return std::nullopt;
    }
    const NodeId only = table.begin()->first;
    if (only == copy.source || copy.was_replicated_to(only)) {
        return std::nullopt;
    }
    return only;
}

bool yields_copy_to(NodeId self, NodeId peer, const BundleCopy& copy) {
    if (copy.is_endpoint(self)) {
        return false;
    }
    return copy.is_endpoint(peer) || self > peer;
}

HelloOutcome on_hello(NodeId self, Position self_pos, NeighborTable& table,
                      std::span<const BundleCopy> buffer, const HelloMessage& hello, Tick now,
                      const GroneConfig& config) {
    HelloOutcome out;
    out.new_neighbor = table.upsert(hello.sender, hello.sender_position, now);
    if (distance(self_pos, hello.sender_position) >= config.purge_distance) {
        return out;
    }
    for (const BundleCopy& copy : buffer) {
        if (std::binary_search(hello.summary_vector.begin(), hello.summary_vector.end(),
                               copy.bundle_id) &&
            yields_copy_to(self, hello.sender, copy)) {
            out.purge.push_back(copy.bundle_id);
        }
    }
    return out;
}

std::vector<NodeId> expire_neighbors(NeighborTable& table, Tick now, Tick hello_interval) {
    std::vector<NodeId> removed;
    for (auto& [eid, entry] : table) {
        if (now - entry.last_hello >= hello_interval) {
            ++entry.missed_count;
        }
        if (entry.missed_count > 2) {
            removed.push_back(eid);
        }
    }
    for (NodeId eid : removed) {
        table.erase(eid);
    }
    return removed;
}

std::vector<Delivery> deliver_pass(std::span<const BundleCopy> buffer, const NeighborTable& table) {
    std::vector<Delivery> out;
    for (const BundleCopy& copy : buffer) {
        if (table.contains(copy.destination)) {
            out.push_back({copy.bundle_id, copy.destination});
        }
    }
    return out;
}

}  // namespace dtnsim::grone
