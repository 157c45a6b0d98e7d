#pragma once
/**
 * Time-stepped simulation engine.
 *
 * Each tick runs, in order: mobility, link detection, Hello exchange (for
 * protocols that beacon), the per-node protocol step, transfer progress,
 * TTL expiry and traffic generation. Nodes are always visited in EID order
 * and every random draw comes from a stream keyed by (seed, node, purpose),
 * so a run is a pure function of its scenario.
 */

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dtnsim/bundle.hpp"
#include "dtnsim/event_log.hpp"
#include "dtnsim/geometry.hpp"
#include "dtnsim/grone.hpp"
#include "dtnsim/ids.hpp"
#include "dtnsim/scenario.hpp"

namespace dtnsim {

using Rng = std::mt19937_64;

/// Independent generator for one (seed, node, purpose) triple.
[[nodiscard]] Rng make_stream(std::uint64_t seed, std::uint64_t node, std::uint64_t purpose);

struct Motion {
    Position position;
    Vec2 heading{1.0, 0.0};
    Meters leg_remaining{0.0};
};

struct WalkParams {
    Meters width{1000.0};
    Meters height{1000.0};
    double speed{0.5};
    Meters leg_min{50.0};
    Meters leg_max{200.0};
};

/// Advances one clock step of a random walk: speed * dt metres along the
/// heading, drawing a fresh uniform heading and leg length whenever the leg
/// runs out, and mirroring the heading off the world edges.
[[nodiscard]] Motion random_walk_step(Motion m, const WalkParams& params, double dt, Rng& rng);

/// All unordered pairs (i < j) within `radius` of each other, inclusive.
[[nodiscard]] std::vector<std::pair<std::uint32_t, std::uint32_t>> detect_links(
    std::span<const Position> positions, Meters radius);

struct NodeState {
    NodeId eid;
    Motion motion;
    /// Copies in arrival order (front is oldest).
    std::vector<BundleCopy> buffer;
    Bytes buffer_used{0};
    grone::NeighborTable neighbors;
    Tick hello_phase{0};
    /// Bundles already consumed here as their destination.
    std::unordered_set<BundleId> delivered;
    /// Bundles with a queued or active transfer out of / into this node.
    std::vector<BundleId> outgoing;
    std::vector<BundleId> incoming;
    Rng mobility_rng;

    [[nodiscard]] Position position() const { return motion.position; }
    [[nodiscard]] BundleCopy* find(BundleId id);
    [[nodiscard]] const BundleCopy* find(BundleId id) const;
    [[nodiscard]] bool holds(BundleId id) const { return find(id) != nullptr; }
    /// Sorted ids of the buffered bundles.
    [[nodiscard]] std::vector<BundleId> summary_vector() const;
};

struct InsertOutcome {
    bool inserted{false};
    std::vector<BundleCopy> dropped;
};

/// Appends a copy, evicting the oldest copies this node did not originate
/// (then, if still short, its own oldest) until it fits. A bundle already
/// buffered is refused without eviction. Throws std::invalid_argument if the
/// copy is larger than the whole buffer.
InsertOutcome buffer_insert(NodeState& node, BundleCopy copy, Bytes capacity);

struct Transfer {
    NodeId from;
    NodeId to;
    BundleId bundle;
    double bytes_remaining{0.0};
    Tick started_at{0};
    Position sender_position;
    /// Opaque value the router attached when offering.
    int tag{-1};
    bool active{false};
};

/// `refused` means the receiver's router declined the bundle from this sender.
enum class OfferResult { queued, receiver_has, no_link, already_pending, sender_lacks, refused };

enum class RemovalReason { dropped, expired, purged, handed_over };

class World;

/// Protocol hooks driven by the engine.
class Router {
public:
    virtual ~Router() = default;

    /// Beacon phase, once per tick before the protocol step.
    virtual void hello_phase(World&) {}
    virtual void on_tick(World&, NodeState&) = 0;
    virtual void on_created(World&, NodeState&, BundleCopy&) {}
    /// Whether `receiver` is willing to take `bundle` from `from`.
    virtual bool accepts(const World&, const NodeState& /*receiver*/, NodeId /*from*/, BundleId) { return true; }
    /// `received` is null when the receiver consumed the bundle as its
    /// destination. The sender's copy still exists when this is called.
    virtual void on_transfer_done(World&, const Transfer&, NodeState& /*sender*/,
                                  NodeState& /*receiver*/, BundleCopy* /*received*/) {}
    /// Called for queued and active transfers alike.
    virtual void on_transfer_aborted(World&, const Transfer&) {}
    virtual void on_copy_removed(World&, NodeState&, const BundleCopy&, RemovalReason) {}
};

[[nodiscard]] std::unique_ptr<Router> make_router(const Scenario& scenario);

struct WorldOptions {
    bool record_events{false};
    /// Overrides the random initial placement; must have node_count entries.
    std::optional<std::vector<Position>> initial_positions;
    /// Nodes never move.
    bool stationary{false};
    bool generate_traffic{true};
};

class World {
public:
    /// Validates the scenario (throws ConfigError) and places the nodes.
    explicit World(Scenario scenario, WorldOptions options = {});
    ~World();
    World(const World&) = delete;
    World& operator=(const World&) = delete;

    /// Runs one clock step.
    void step();
    void run_to_end();
    [[nodiscard]] bool finished() const { return now_ >= total_ticks_; }
    /// Tick being (or about to be) processed.
    [[nodiscard]] Tick now() const { return now_; }

    [[nodiscard]] const Scenario& scenario() const { return scenario_; }
    [[nodiscard]] std::span<NodeState> nodes() { return nodes_; }
    [[nodiscard]] std::span<const NodeState> nodes() const { return nodes_; }
    [[nodiscard]] NodeState& node(NodeId id) { return nodes_.at(id.value); }
    [[nodiscard]] const NodeState& node(NodeId id) const { return nodes_.at(id.value); }

    [[nodiscard]] bool linked(NodeId a, NodeId b) const;
    /// Current link partners of `a`, ascending EID.
    [[nodiscard]] std::span<const NodeId> links_of(NodeId a) const { return adjacency_.at(a.value); }
    /// Tick at which the a-b link came up; meaningful only while linked.
    [[nodiscard]] Tick link_up_since(NodeId a, NodeId b) const;
    [[nodiscard]] bool hello_due(const NodeState& n) const;
    [[nodiscard]] Tick hello_ticks() const { return hello_ticks_; }

    /// Queues a transfer on the ordered link from -> to. It starts at once if
    /// the link is idle, otherwise after the transfers ahead of it.
    OfferResult offer(NodeId from, NodeId to, BundleId bundle, int tag = -1);
    [[nodiscard]] bool has_outgoing(NodeId from, BundleId bundle) const;
    /// True when nothing is queued or in flight on the ordered link from -> to.
    [[nodiscard]] bool link_idle(NodeId from, NodeId to) const;
    [[nodiscard]] const std::map<std::pair<std::uint32_t, std::uint32_t>, std::deque<Transfer>>&
    transfers() const {
        return links_;
    }

    /// Creates a bundle at `source` as traffic generation would.
    BundleId create_bundle(NodeId source, NodeId destination);
    /// Inserts a copy into a node's buffer, logging and cleaning up evictions.
    bool insert_copy(NodeState& node, BundleCopy copy);
    /// Removes a copy, aborting its outgoing transfers. Logs the removal
    /// except for hand-overs. Returns false if the copy was not buffered.
    bool remove_copy(NodeState& node, BundleId bundle, RemovalReason reason);

    /// Moves a node (test scaffolding for stationary scenarios).
    void place(NodeId id, Position p) { nodes_.at(id.value).motion.position = p; }

    [[nodiscard]] EventLog& log() { return log_; }
    [[nodiscard]] const EventLog& log() const { return log_; }
    [[nodiscard]] Router& router() { return *router_; }

private:
    using LinkKey = std::pair<std::uint32_t, std::uint32_t>;

    void move_nodes();
    void update_links();
    void step_transfers();
    void expire_ttl();
    void generate_traffic();

    void activate_head(std::deque<Transfer>& queue, Tick start);
    void abort_queue(LinkKey key);
    void abort_outgoing(NodeState& node, BundleId bundle, int hops);
    void forget_transfer(const Transfer& t);
    void complete(Transfer t);
    void after_removal(NodeState& node, const BundleCopy& copy, RemovalReason reason);
    void emit(EventKind kind, const BundleCopy& copy, NodeId a, std::optional<NodeId> b, int hops,
              Tick at);

    Scenario scenario_;
    WorldOptions options_;
    WalkParams walk_;
    Tick now_{0};
    Tick total_ticks_{0};
    Tick hello_ticks_{1};
    Tick interval_ticks_{1};
    Tick ttl_ticks_{1};
    double bytes_per_tick_{0.0};
    std::vector<NodeState> nodes_;
    std::vector<std::vector<NodeId>> adjacency_;
    /// link_up_[i * n + j] for i < j; -1 while the pair is out of range.
    std::vector<Tick> link_up_;
    std::map<LinkKey, std::deque<Transfer>> links_;
    std::uint32_t next_bundle_{0};
    Rng traffic_rng_;
    EventLog log_;
    std::unique_ptr<Router> router_;
};

/// Runs a scenario to completion and returns its log.
[[nodiscard]] EventLog run(const Scenario& scenario, bool record_events = false);

}  // namespace dtnsim
