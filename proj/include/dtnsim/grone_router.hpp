#pragma once

#include <unordered_map>
#include <vector>

#include "dtnsim/grone.hpp"
#include "dtnsim/world.hpp"

namespace dtnsim {

/// Drives the GRONE decision functions from engine ticks.
///
/// Per tick and node: deliverable bundles go straight to their destination;
/// with one neighbour a copy is replicated naively; a source copy without an
/// anchor first replicates to its nearest neighbour; otherwise each copy
/// sends to the best neighbour of each forward sector it has not served yet.
class GroneRouter final : public Router {
public:
    /// Tags attached to offered transfers.
    static constexpr int kSectorATag = 0;
    static constexpr int kSectorBTag = 1;
    static constexpr int kNaiveTag = 2;
    static constexpr int kBootstrapTag = 3;
    static constexpr int kDeliveryTag = -1;

    explicit GroneRouter(grone::GroneConfig config);

    [[nodiscard]] const grone::GroneConfig& config() const { return config_; }

    void hello_phase(World& world) override;
    void on_tick(World& world, NodeState& node) override;
    void on_transfer_done(World& world, const Transfer& t, NodeState& sender, NodeState& receiver,
                          BundleCopy* received) override;
    void on_transfer_aborted(World& world, const Transfer& t) override;
    /// A node that purged a bundle in favour of a close peer declines that
    /// bundle from the same peer while the two are still within the purge
    /// distance. Other senders are unaffected.
    bool accepts(const World& world, const NodeState& receiver, NodeId from, BundleId bundle) override;

    /// Processes one Hello at `receiver`, purging the copies it yields.
    void receive_hello(World& world, NodeState& receiver, const grone::HelloMessage& hello);

private:
    void replicate(World& world, NodeState& node, BundleCopy& copy);

    grone::GroneConfig config_;
    /// Per node: purged bundle -> the peer it was left to.
    std::vector<std::unordered_map<BundleId, NodeId>> yielded_;
};

}  // namespace dtnsim
