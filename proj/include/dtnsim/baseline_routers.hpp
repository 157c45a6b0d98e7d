#pragma once

#include <cstdint>
#include <unordered_map>

#include "dtnsim/baselines.hpp"
#include "dtnsim/world.hpp"

namespace dtnsim {

/// Contacts of `node` with their link-up ticks, ascending EID.
[[nodiscard]] std::vector<baselines::Contact> contacts_of(const World& world, NodeId node);

class EpidemicRouter final : public Router {
public:
    void on_tick(World& world, NodeState& node) override;

private:
    const std::vector<BundleId>& summary_of(const World& world, NodeId id);

    Tick summary_tick_{-1};
    std::vector<std::vector<BundleId>> summaries_;
};

class SprayAndWaitRouter final : public Router {
public:
    explicit SprayAndWaitRouter(std::uint32_t tickets) : tickets_(tickets) {}

    void on_tick(World& world, NodeState& node) override;
    void on_created(World& world, NodeState& node, BundleCopy& copy) override;
    void on_transfer_done(World& world, const Transfer& t, NodeState& sender, NodeState& receiver,
                          BundleCopy* received) override;
    void on_copy_removed(World& world, NodeState& node, const BundleCopy& copy, RemovalReason reason) override;

    [[nodiscard]] std::uint32_t initial_tickets() const { return tickets_; }
    /// Tickets that left the network with dropped, expired or purged copies.
    [[nodiscard]] std::uint32_t tickets_destroyed(BundleId id) const;

private:
    std::uint32_t tickets_;
    std::unordered_map<BundleId, std::uint32_t> destroyed_;
};

class FirstContactRouter final : public Router {
public:
    void on_tick(World& world, NodeState& node) override;
    void on_created(World& world, NodeState& node, BundleCopy& copy) override;
    void on_transfer_done(World& world, const Transfer& t, NodeState& sender, NodeState& receiver,
                          BundleCopy* received) override;
};

class DirectDeliveryRouter final : public Router {
public:
    void on_tick(World& world, NodeState& node) override;
    void on_transfer_done(World& world, const Transfer& t, NodeState& sender, NodeState& receiver,
                          BundleCopy* received) override;
};

}  // namespace dtnsim
