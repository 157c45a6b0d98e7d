#include "dtnsim/baseline_routers.hpp"

#include <algorithm>

namespace dtnsim {

std::vector<baselines::Contact> contacts_of(const World& world, NodeId node) {
    std::vector<baselines::Contact> out;
    for (NodeId peer : world.links_of(node)) {
        out.push_back({peer, world.link_up_since(node, peer)});
    }
    return out;
}

const std::vector<BundleId>& EpidemicRouter::summary_of(const World& world, NodeId id) {
    // Buffers only change while transfers step, so one snapshot serves the
    // whole routing phase of a tick.
    if (summary_tick_ != world.now()) {
        summary_tick_ = world.now();
        summaries_.resize(world.nodes().size());
        for (const NodeState& n : world.nodes()) {
            auto& ids = summaries_[n.eid.value];
            ids.clear();
            for (const BundleCopy& c : n.buffer) {
                ids.push_back(c.bundle_id);
            }
            std::sort(ids.begin(), ids.end());
        }
    }
    return summaries_[id.value];
}

void EpidemicRouter::on_tick(World& world, NodeState& node) {
    const auto links = world.links_of(node.eid);
    if (links.empty()) {
        return;
    }
    // Each pair exchanges once, from its lower-EID end.
    for (NodeId peer : links) {
        if (peer < node.eid) {
            continue;
        }
        const auto& mine = summary_of(world, node.eid);
        const auto& theirs = summary_of(world, peer);
        if (mine == theirs) {
            continue;
        }
        // A direction picks its next bundle only once the link is idle, so
        // the choice reflects what the receiver is still missing by then.
        bool forward_open = world.link_idle(node.eid, peer);
        bool reverse_open = world.link_idle(peer, node.eid);
        if (!forward_open && !reverse_open) {
            continue;
        }
        for (const auto& t : baselines::epidemic_exchange(node.eid, mine, peer, theirs)) {
            bool& open = t.from == node.eid ? forward_open : reverse_open;
            if (open && world.offer(t.from, t.to, t.bundle) == OfferResult::queued) {
                open = false;
            }
            if (!forward_open && !reverse_open) {
                break;
            }
        }
    }
}

void SprayAndWaitRouter::on_created(World& /*world*/, NodeState& /*node*/, BundleCopy& copy) {
    copy.tickets = tickets_;
}

void SprayAndWaitRouter::on_tick(World& world, NodeState& node) {
    const auto links = world.links_of(node.eid);
    if (links.empty()) {
        return;
    }
    for (std::size_t i = 0; i < node.buffer.size(); ++i) {
        const BundleCopy& copy = node.buffer[i];
        for (NodeId peer : links) {
            const bool to_destination = peer == copy.destination;
            if (!to_destination && world.has_outgoing(node.eid, copy.bundle_id)) {
                continue;
            }
            const auto decision =
                baselines::snw_forward({copy.bundle_id, copy.tickets}, to_destination);
            if (!decision.transfer) {
                continue;
            }
            world.offer(node.eid, peer, copy.bundle_id);
        }
    }
}

void SprayAndWaitRouter::on_transfer_done(World& /*world*/, const Transfer& t, NodeState& sender,
                                          NodeState& /*receiver*/, BundleCopy* received) {
    if (received == nullptr) {
        return;
    }
    BundleCopy* mine = sender.find(t.bundle);
    const auto decision = baselines::snw_forward({t.bundle, mine->tickets}, false);
    mine->tickets = decision.keep;
    received->tickets = decision.give;
}

void SprayAndWaitRouter::on_copy_removed(World& /*world*/, NodeState& /*node*/, const BundleCopy& copy,
                                         RemovalReason reason) {
    if (reason != RemovalReason::handed_over) {
        destroyed_[copy.bundle_id] += copy.tickets;
    }
}

std::uint32_t SprayAndWaitRouter::tickets_destroyed(BundleId id) const {
    auto it = destroyed_.find(id);
    return it == destroyed_.end() ? 0 : it->second;
}

void FirstContactRouter::on_created(World& /*world*/, NodeState& node, BundleCopy& copy) {
    copy.visited = {node.eid};
}

void FirstContactRouter::on_tick(World& world, NodeState& node) {
    if (world.links_of(node.eid).empty()) {
        return;
    }
    const auto contacts = contacts_of(world, node.eid);
    for (std::size_t i = 0; i < node.buffer.size(); ++i) {
        const BundleCopy& copy = node.buffer[i];
        if (world.has_outgoing(node.eid, copy.bundle_id)) {
            continue;
        }
        const baselines::FcRecordVector record{copy.bundle_id, copy.visited};
        if (const auto next = baselines::fc_forward(record, copy.destination, contacts)) {
            world.offer(node.eid, *next, copy.bundle_id);
        }
    }
}

void FirstContactRouter::on_transfer_done(World& world, const Transfer& t, NodeState& sender,
                                          NodeState& receiver, BundleCopy* received) {
    if (received != nullptr) {
        baselines::FcRecordVector record{t.bundle, std::move(received->visited)};
        record.add(receiver.eid);
        received->visited = std::move(record.visited);
    }
    world.remove_copy(sender, t.bundle, RemovalReason::handed_over);
}

void DirectDeliveryRouter::on_tick(World& world, NodeState& node) {
    if (world.links_of(node.eid).empty()) {
        return;
    }
    const auto contacts = contacts_of(world, node.eid);
    for (std::size_t i = 0; i < node.buffer.size(); ++i) {
        const BundleCopy& copy = node.buffer[i];
        if (world.has_outgoing(node.eid, copy.bundle_id)) {
            continue;
        }
        if (const auto next = baselines::dd_forward(copy.destination, contacts)) {
            world.offer(node.eid, *next, copy.bundle_id);
        }
    }
}

void DirectDeliveryRouter::on_transfer_done(World& world, const Transfer& t, NodeState& sender,
                                            NodeState& /*receiver*/, BundleCopy* /*received*/) {
    world.remove_copy(sender, t.bundle, RemovalReason::handed_over);
}

}  // namespace dtnsim
