#include "dtnsim/grone_router.hpp"

namespace dtnsim {

GroneRouter::GroneRouter(grone::GroneConfig config) : config_(config) { config_.validate(); }

void GroneRouter::hello_phase(World& world) {
    for (NodeState& sender : world.nodes()) {
        if (!world.hello_due(sender)) {
            continue;
        }
        const grone::HelloMessage hello{sender.eid, sender.position(), sender.summary_vector()};
        for (NodeId peer : world.links_of(sender.eid)) {
            receive_hello(world, world.node(peer), hello);
        }
    }
    for (NodeState& n : world.nodes()) {
        if (world.hello_due(n)) {
            grone::expire_neighbors(n.neighbors, world.now(), config_.hello_interval);
        }
    }
}

void GroneRouter::receive_hello(World& world, NodeState& receiver, const grone::HelloMessage& hello) {
    const grone::HelloOutcome outcome = grone::on_hello(receiver.eid, receiver.position(), receiver.neighbors,
                                                        receiver.buffer, hello, world.now(), config_);
    if (!outcome.purge.empty() && yielded_.size() < world.nodes().size()) {
        yielded_.resize(world.nodes().size());
    }
    for (BundleId id : outcome.purge) {
        world.remove_copy(receiver, id, RemovalReason::purged);
        yielded_[receiver.eid.value][id] = hello.sender;
    }
}

bool GroneRouter::accepts(const World& /*world*/, const NodeState& receiver, NodeId from, BundleId bundle) {
    if (receiver.eid.value >= yielded_.size()) {
        return true;
    }
    auto& yielded = yielded_[receiver.eid.value];
    const auto it = yielded.find(bundle);
    if (it == yielded.end() || it->second != from) {
        return true;
    }
    const grone::NeighborEntry* peer = receiver.neighbors.find(from);
    if (peer != nullptr && distance(receiver.position(), peer->position) < config_.purge_distance) {
        return false;
    }
    yielded.erase(it);
    return true;
}

void GroneRouter::on_tick(World& world, NodeState& node) {
    if (node.neighbors.empty()) {
        return;
    }
    for (const grone::Delivery& d : grone::deliver_pass(node.buffer, node.neighbors)) {
        world.offer(node.eid, d.destination, d.bundle, kDeliveryTag);
    }
    // Offers never touch buffers, so indexing stays valid across the loop.
    for (std::size_t i = 0; i < node.buffer.size(); ++i) {
        BundleCopy& copy = node.buffer[i];
        if (!node.neighbors.contains(copy.destination)) {
            replicate(world, node, copy);
        }
    }
}

void GroneRouter::replicate(World& world, NodeState& node, BundleCopy& copy) {
    const grone::NeighborTable& table = node.neighbors;
    const auto accepted = [](OfferResult r) {
        return r == OfferResult::queued || r == OfferResult::receiver_has;
    };

    if (table.size() == 1) {
        const auto target = grone::naive_replicate(copy, table);
        if (!target) {
            return;
        }
        const OfferResult r = world.offer(node.eid, *target, copy.bundle_id, kNaiveTag);
        if (accepted(r) || r == OfferResult::refused) {
            copy.mark_replicated_to(*target);
        }
        if (r == OfferResult::receiver_has && !copy.anchor) {
            copy.anchor = table.find(*target)->position;
        }
        return;
    }

    if (!copy.anchor) {
        if (copy.source != node.eid || world.has_outgoing(node.eid, copy.bundle_id)) {
            return;
        }
        const auto target = grone::bootstrap_source(node.eid, node.position(), copy, table, config_.radius);
        if (!target) {
            return;
        }
        const OfferResult r = world.offer(node.eid, *target, copy.bundle_id, kBootstrapTag);
        if (accepted(r) || r == OfferResult::refused) {
            copy.mark_replicated_to(*target);
        }
        if (r == OfferResult::receiver_has) {
            copy.anchor = table.find(*target)->position;
        }
        return;
    }

    if (copy.sector_served[0] && copy.sector_served[1]) {
        return;
    }
    for (const grone::RelayChoice& choice : grone::select_relays(node.position(), copy, table, config_.radius)) {
        const int slot = choice.sector == Sector::A ? kSectorATag : kSectorBTag;
        if (copy.sector_served[slot]) {
            continue;
        }
        const OfferResult r = world.offer(node.eid, choice.eid, copy.bundle_id, slot);
        if (accepted(r)) {
            copy.mark_replicated_to(choice.eid);
            copy.sector_served[slot] = true;
        } else if (r == OfferResult::refused) {
            copy.mark_replicated_to(choice.eid);
        }
    }
}

void GroneRouter::on_transfer_done(World& /*world*/, const Transfer& t, NodeState& sender,
                                   NodeState& receiver, BundleCopy* received) {
    if (received == nullptr) {
        return;
    }
    BundleCopy* mine = sender.find(t.bundle);
    if (mine != nullptr && !mine->anchor) {
        const grone::NeighborEntry* entry = sender.neighbors.find(t.to);
        mine->anchor = entry != nullptr ? entry->position : receiver.position();
    }
}

void GroneRouter::on_transfer_aborted(World& world, const Transfer& t) {
    BundleCopy* copy = world.node(t.from).find(t.bundle);
    if (copy == nullptr || t.tag == kDeliveryTag) {
        return;
    }
    copy->unmark_replicated_to(t.to);
    if (t.tag == kSectorATag || t.tag == kSectorBTag) {
        copy->sector_served[t.tag] = false;
    }
}

}  // namespace dtnsim
