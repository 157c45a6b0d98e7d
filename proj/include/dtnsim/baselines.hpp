#pragma once
/**
 * Reference routing schemes: Epidemic, Binary Spray and Wait, FirstContact
 * and Direct Delivery. Decision logic only; the routers in
 * baseline_routers.hpp apply it to engine contacts.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dtnsim/bundle.hpp"
#include "dtnsim/ids.hpp"

namespace dtnsim::baselines {

struct PlannedTransfer {
    NodeId from;
    NodeId to;
    BundleId bundle;

    friend bool operator==(const PlannedTransfer&, const PlannedTransfer&) = default;
};

/// Anti-entropy between two summary vectors (both sorted): each side pulls
/// every bundle the other has and it lacks. Transfers a->b come first.
[[nodiscard]] std::vector<PlannedTransfer> epidemic_exchange(NodeId a, std::span<const BundleId> a_summary,
                                                             NodeId b, std::span<const BundleId> b_summary);

struct SprayState {
    BundleId bundle_id;
    std::uint32_t tickets{1};
};

struct SprayDecision {
    bool transfer{false};
    std::uint32_t keep{0};
    std::uint32_t give{0};
};

/// Binary spray: with n > 1 tickets hand floor(n/2) to the peer and keep
/// ceil(n/2). With one ticket only the destination gets the bundle. A
/// delivery moves no tickets.
[[nodiscard]] SprayDecision snw_forward(const SprayState& state, bool peer_is_destination);

struct FcRecordVector {
    BundleId bundle_id;
    std::vector<NodeId> visited;

    [[nodiscard]] bool contains(NodeId n) const;
    /// Appends n unless already recorded.
    void add(NodeId n);
};

/// A live link as seen from one endpoint.
struct Contact {
    NodeId peer;
    Tick since{0};
};

/// FirstContact next hop: the destination if it is a contact, otherwise the
/// earliest-established contact not yet in the record vector (ties to the
/// smaller EID).
[[nodiscard]] std::optional<NodeId> fc_forward(const FcRecordVector& record, NodeId destination,
                                               std::span<const Contact> contacts);

/// Direct Delivery: hand over only to the destination itself.
[[nodiscard]] std::optional<NodeId> dd_forward(NodeId destination, std::span<const Contact> contacts);

}  // namespace dtnsim::baselines
