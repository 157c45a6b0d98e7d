#include "dtnsim/baselines.hpp"

#include <algorithm>

namespace dtnsim::baselines {

std::vector<PlannedTransfer> epidemic_exchange(NodeId a, std::span<const BundleId> a_summary,
                                               NodeId b, std::span<const BundleId> b_summary) {
    std::vector<PlannedTransfer> out;
    std::vector<BundleId> diff;
    std::set_difference(a_summary.begin(), a_summary.end(), b_summary.begin(), b_summary.end(),
                        std::back_inserter(diff));
    for (BundleId id : diff) {
        out.push_back({a, b, id});
    }
    diff.clear();
    std::set_difference(b_summary.begin(), b_summary.end(), a_summary.begin(), a_summary.end(),
                        std::back_inserter(diff));
    for (BundleId id : diff) {
        out.push_back({b, a, id});
    }
    return out;
}

SprayDecision snw_forward(const SprayState& state, bool peer_is_destination) {
    if (peer_is_destination) {
        return {true, state.tickets, 0};
    }
    if (state.tickets <= 1) {
        return {false, state.tickets, 0};
    }
    const std::uint32_t give = state.tickets / 2;
    return {true, state.tickets - give, give};
}

bool FcRecordVector::contains(NodeId n) const {
    return std::find(visited.begin(), visited.end(), n) != visited.end();
}

void FcRecordVector::add(NodeId n) {
    if (!contains(n)) {
        visited.push_back(n);
    }
}

std::optional<NodeId> fc_forward(const FcRecordVector& record, NodeId destination,
                                 std::span<const Contact> contacts) {
    std::optional<Contact> best;
    for (const Contact& c : contacts) {
        if (c.peer == destination) {
            return destination;
        }
        if (record.contains(c.peer)) {
            continue;
        }
        if (!best || c.since < best->since || (c.since == best->since && c.peer < best->peer)) {
            best = c;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return best->peer;
}

std::optional<NodeId> dd_forward(NodeId destination, std::span<const Contact> contacts) {
    for (const Contact& c : contacts) {
        if (c.peer == destination) {
            return destination;
        }
    }
    return std::nullopt;
}

}  // namespace dtnsim::baselines
