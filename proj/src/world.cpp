#include "dtnsim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dtnsim/baseline_routers.hpp"
#include "dtnsim/grone_router.hpp"

namespace dtnsim {

namespace {

// Purpose tags for make_stream.
constexpr std::uint64_t kMobilityStream = 1;
constexpr std::uint64_t kHelloStream = 2;
constexpr std::uint64_t kTrafficStream = 3;
constexpr std::uint64_t kNoNode = std::numeric_limits<std::uint32_t>::max();

constexpr double kDrainedEpsilon = 1e-6;

void erase_one(std::vector<BundleId>& v, BundleId id) {
    auto it = std::find(v.begin(), v.end(), id);
    if (it != v.end()) {
        v.erase(it);
    }
}

bool contains(const std::vector<BundleId>& v, BundleId id) {
    return std::find(v.begin(), v.end(), id) != v.end();
}

// Mirrors p back into [0, extent] and flips the heading component on each bounce.
void reflect_axis(double& p, double& heading, double extent) {
    for (int i = 0; i < 8 && (p < 0.0 || p > extent); ++i) {
        if (p < 0.0) {
            p = -p;
        } else {
            p = 2.0 * extent - p;
        }
        heading = -heading;
    }
    p = std::clamp(p, 0.0, extent);
}

EventKind event_for(RemovalReason reason) {
    switch (reason) {
    case RemovalReason::expired:
        return EventKind::expired;
    case RemovalReason::purged:
        return EventKind::purged;
    case RemovalReason::dropped:
    case RemovalReason::handed_over:
        break;
    }
    return EventKind::dropped;
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t node, std::uint64_t purpose) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(node), static_cast<std::uint32_t>(node >> 32),
                      static_cast<std::uint32_t>(purpose)};
    return Rng(seq);
}

Motion random_walk_step(Motion m, const WalkParams& params, double dt, Rng& rng) {
    double remaining = params.speed * dt;
    while (remaining > 0.0) {
        if (m.leg_remaining <= 0.0) {
            const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
            m.heading = {std::cos(angle), std::sin(angle)};
            m.leg_remaining = std::uniform_real_distribution<double>(params.leg_min, params.leg_max)(rng);
        }
        const double seg = std::min(remaining, m.leg_remaining);
        Position p = m.position + m.heading * seg;
        reflect_axis(p.x, m.heading.dx, params.width);
        reflect_axis(p.y, m.heading.dy, params.height);
        m.position = p;
        m.leg_remaining -= seg;
        remaining -= seg;
    }
    return m;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> detect_links(std::span<const Position> positions,
                                                                  Meters radius) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    const double r2 = radius * radius;
    for (std::uint32_t i = 0; i < positions.size(); ++i) {
        for (std::uint32_t j = i + 1; j < positions.size(); ++j) {
            const Vec2 d = positions[j] - positions[i];
            if (dot(d, d) <= r2) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

BundleCopy* NodeState::find(BundleId id) {
    for (auto& c : buffer) {
        if (c.bundle_id == id) {
            return &c;
        }
    }
    return nullptr;
}

const BundleCopy* NodeState::find(BundleId id) const {
    for (const auto& c : buffer) {
        if (c.bundle_id == id) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<BundleId> NodeState::summary_vector() const {
    std::vector<BundleId> ids;
    ids.reserve(buffer.size());
    for (const auto& c : buffer) {
        ids.push_back(c.bundle_id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

InsertOutcome buffer_insert(NodeState& node, BundleCopy copy, Bytes capacity) {
    if (copy.size > capacity) {
        throw std::invalid_argument("buffer_insert: copy is larger than the whole buffer");
    }
    if (node.holds(copy.bundle_id)) {
        return {};
    }
    InsertOutcome out;
    out.inserted = true;
    while (node.buffer_used + copy.size > capacity && !node.buffer.empty()) {
        auto victim = std::find_if(node.buffer.begin(), node.buffer.end(),
                                   [&](const BundleCopy& c) { return c.source != node.eid; });
        if (victim == node.buffer.end()) {
            victim = node.buffer.begin();
        }
        node.buffer_used -= victim->size;
        out.dropped.push_back(std::move(*victim));
        node.buffer.erase(victim);
    }
    node.buffer_used += copy.size;
    node.buffer.push_back(std::move(copy));
    return out;
}

std::unique_ptr<Router> make_router(const Scenario& scenario) {
    switch (scenario.protocol) {
    case Protocol::grone:
        return std::make_unique<GroneRouter>(grone::GroneConfig{
            .radius = scenario.radius,
            .hello_interval = scenario.to_ticks(scenario.hello_interval),
            .purge_distance = scenario.purge_distance(),
        });
    case Protocol::epidemic:
        return std::make_unique<EpidemicRouter>();
    case Protocol::spray_and_wait:
        return std::make_unique<SprayAndWaitRouter>(scenario.spray_tickets);
    case Protocol::first_contact:
        return std::make_unique<FirstContactRouter>();
    case Protocol::direct_delivery:
        return std::make_unique<DirectDeliveryRouter>();
    }
    throw std::invalid_argument("make_router: unknown protocol");
}

World::World(Scenario scenario, WorldOptions options)
    : scenario_(std::move(scenario)), options_(std::move(options)), log_(options_.record_events) {
    scenario_.validate();
    const auto n = static_cast<std::size_t>(scenario_.node_count);
    if (options_.initial_positions && options_.initial_positions->size() != n) {
        throw ConfigError("initial_positions must have one entry per node");
    }
    walk_ = WalkParams{
        .width = scenario_.world_width,
        .height = scenario_.world_height,
        .speed = scenario_.node_speed,
        .leg_min = scenario_.walk_leg_min,
        .leg_max = scenario_.walk_leg_max,
    };
    total_ticks_ = scenario_.total_ticks();
    hello_ticks_ = scenario_.to_ticks(scenario_.hello_interval);
    interval_ticks_ = scenario_.to_ticks(scenario_.message_interval);
    ttl_ticks_ = scenario_.to_ticks(scenario_.ttl);
    bytes_per_tick_ = scenario_.bandwidth * scenario_.clock_step;

    nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        NodeState& node = nodes_[i];
        node.eid = NodeId{static_cast<std::uint32_t>(i)};
        node.mobility_rng = make_stream(scenario_.seed, i, kMobilityStream);
        if (options_.initial_positions) {
            node.motion.position = (*options_.initial_positions)[i];
        } else {
            node.motion.position = {
                std::uniform_real_distribution<double>(0.0, walk_.width)(node.mobility_rng),
                std::uniform_real_distribution<double>(0.0, walk_.height)(node.mobility_rng),
            };
        }
        Rng hello_rng = make_stream(scenario_.seed, i, kHelloStream);
        node.hello_phase = std::uniform_int_distribution<Tick>(0, hello_ticks_ - 1)(hello_rng);
    }
    adjacency_.resize(n);
    link_up_.assign(n * n, -1);
    traffic_rng_ = make_stream(scenario_.seed, kNoNode, kTrafficStream);
    router_ = make_router(scenario_);
}

World::~World() = default;

void World::run_to_end() {
    while (!finished()) {
        step();
    }
}

void World::step() {
    if (finished()) {
        return;
    }
    if (!options_.stationary) {
        move_nodes();
    }
    update_links();
    router_->hello_phase(*this);
    for (NodeState& node : nodes_) {
        router_->on_tick(*this, node);
    }
    step_transfers();
    expire_ttl();
    if (options_.generate_traffic) {
        generate_traffic();
    }
    ++now_;
}

bool World::linked(NodeId a, NodeId b) const {
    if (a == b) {
        return false;
    }
    return link_up_since(a, b) >= 0;
}

Tick World::link_up_since(NodeId a, NodeId b) const {
    const auto lo = std::min(a.value, b.value);
    const auto hi = std::max(a.value, b.value);
    return link_up_[static_cast<std::size_t>(lo) * nodes_.size() + hi];
}

bool World::hello_due(const NodeState& n) const {
    return now_ >= n.hello_phase && (now_ - n.hello_phase) % hello_ticks_ == 0;
}

void World::move_nodes() {
    for (NodeState& node : nodes_) {
        node.motion = random_walk_step(node.motion, walk_, scenario_.clock_step, node.mobility_rng);
    }
}

void World::update_links() {
    const std::size_t n = nodes_.size();
    const double r2 = scenario_.radius * scenario_.radius;
    for (auto& adj : adjacency_) {
        adj.clear();
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Position pi = nodes_[i].position();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 d = nodes_[j].position() - pi;
            Tick& up = link_up_[i * n + j];
            if (dot(d, d) <= r2) {
                if (up < 0) {
                    up = now_;
                }
                adjacency_[i].push_back(nodes_[j].eid);
                adjacency_[j].push_back(nodes_[i].eid);
            } else if (up >= 0) {
                up = -1;
                abort_queue({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
                abort_queue({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
            }
        }
    }
}

OfferResult World::offer(NodeId from, NodeId to, BundleId bundle, int tag) {
    if (!linked(from, to)) {
        return OfferResult::no_link;
    }
    NodeState& sender = node(from);
    const BundleCopy* copy = sender.find(bundle);
    if (copy == nullptr) {
        return OfferResult::sender_lacks;
    }
    NodeState& receiver = node(to);
    if (receiver.holds(bundle) || receiver.delivered.contains(bundle)) {
        return OfferResult::receiver_has;
    }
    if (!router_->accepts(*this, receiver, from, bundle)) {
        return OfferResult::refused;
    }
    if (contains(receiver.incoming, bundle)) {
        return OfferResult::already_pending;
    }
    auto& queue = links_[{from.value, to.value}];
    queue.push_back(Transfer{
        .from = from,
        .to = to,
        .bundle = bundle,
        .bytes_remaining = static_cast<double>(copy->size),
        .started_at = now_,
        .sender_position = sender.position(),
        .tag = tag,
        .active = false,
    });
    sender.outgoing.push_back(bundle);
    receiver.incoming.push_back(bundle);
    if (queue.size() == 1) {
        activate_head(queue, now_);
    }
    return OfferResult::queued;
}

bool World::has_outgoing(NodeId from, BundleId bundle) const {
    return contains(node(from).outgoing, bundle);
}

bool World::link_idle(NodeId from, NodeId to) const {
    const auto it = links_.find({from.value, to.value});
    return it == links_.end() || it->second.empty();
}

void World::activate_head(std::deque<Transfer>& queue, Tick start) {
    if (queue.empty() || queue.front().active) {
        return;
    }
    Transfer& t = queue.front();
    t.active = true;
    t.started_at = start;
    t.sender_position = node(t.from).position();
    const BundleCopy* copy = node(t.from).find(t.bundle);
    log_.record(Event{start, EventKind::started, t.bundle, t.from, t.to, copy ? copy->hop_count : 0});
}

void World::forget_transfer(const Transfer& t) {
    erase_one(node(t.from).outgoing, t.bundle);
    erase_one(node(t.to).incoming, t.bundle);
}

void World::abort_queue(LinkKey key) {
    auto it = links_.find(key);
    if (it == links_.end() || it->second.empty()) {
        return;
    }
    std::deque<Transfer> dropped;
    dropped.swap(it->second);
    for (const Transfer& t : dropped) {
        forget_transfer(t);
        if (t.active) {
            const BundleCopy* copy = node(t.from).find(t.bundle);
            log_.record(Event{now_, EventKind::aborted, t.bundle, t.from, t.to, copy ? copy->hop_count : 0});
        }
    }
    for (const Transfer& t : dropped) {
        router_->on_transfer_aborted(*this, t);
    }
}

void World::abort_outgoing(NodeState& sender, BundleId bundle, int hops) {
    if (!contains(sender.outgoing, bundle)) {
        return;
    }
    std::vector<Transfer> aborted;
    const std::uint32_t from = sender.eid.value;
    for (auto it = links_.lower_bound({from, 0}); it != links_.end() && it->first.first == from; ++it) {
        auto& queue = it->second;
        const bool head_hit = !queue.empty() && queue.front().bundle == bundle;
        for (auto q = queue.begin(); q != queue.end();) {
            if (q->bundle == bundle) {
                aborted.push_back(*q);
                q = queue.erase(q);
            } else {
                ++q;
            }
        }
        if (head_hit) {
            activate_head(queue, now_);
        }
    }
    for (const Transfer& t : aborted) {
        forget_transfer(t);
        if (t.active) {
            log_.record(Event{now_, EventKind::aborted, t.bundle, t.from, t.to, hops});
        }
    }
    for (const Transfer& t : aborted) {
        router_->on_transfer_aborted(*this, t);
    }
}

void World::step_transfers() {
    std::vector<LinkKey> finished_links;
    for (auto& [key, queue] : links_) {
        if (queue.empty() || !queue.front().active) {
            continue;
        }
        Transfer& head = queue.front();
        head.bytes_remaining -= bytes_per_tick_;
        if (head.bytes_remaining <= kDrainedEpsilon) {
            finished_links.push_back(key);
        }
    }
    for (const LinkKey& key : finished_links) {
        auto it = links_.find(key);
        if (it == links_.end() || it->second.empty()) {
            continue;
        }
        const Transfer& head = it->second.front();
        if (!head.active || head.bytes_remaining > kDrainedEpsilon) {
            continue;
        }
        Transfer t = head;
        it->second.pop_front();
        complete(t);
        activate_head(it->second, now_ + 1);
    }
    std::erase_if(links_, [](const auto& kv) { return kv.second.empty(); });
}

void World::complete(Transfer t) {
    forget_transfer(t);
    NodeState& sender = node(t.from);
    NodeState& receiver = node(t.to);
    const BundleCopy* original = sender.find(t.bundle);
    if (original == nullptr) {
        return;
    }
    BundleCopy copy = *original;
    copy.hop_count += 1;
    copy.anchor = t.sender_position;
    copy.replicated_to = {t.from};
    copy.sector_served = {false, false};

    const Tick at = now_ + 1;
    emit(EventKind::relayed, copy, t.from, t.to, copy.hop_count, at);
    if (receiver.eid == copy.destination) {
        if (receiver.delivered.insert(copy.bundle_id).second) {
            emit(EventKind::delivered, copy, t.from, t.to, copy.hop_count, at);
        }
        router_->on_transfer_done(*this, t, sender, receiver, nullptr);
        return;
    }
    const BundleId id = copy.bundle_id;
    if (!insert_copy(receiver, std::move(copy))) {
        return;
    }
    router_->on_transfer_done(*this, t, sender, receiver, receiver.find(id));
}

void World::emit(EventKind kind, const BundleCopy& copy, NodeId a, std::optional<NodeId> b, int hops,
                 Tick at) {
    log_.record(Event{at, kind, copy.bundle_id, a, b, hops});
}

bool World::insert_copy(NodeState& n, BundleCopy copy) {
    InsertOutcome outcome = buffer_insert(n, std::move(copy), scenario_.buffer_size);
    for (const BundleCopy& victim : outcome.dropped) {
        after_removal(n, victim, RemovalReason::dropped);
    }
    return outcome.inserted;
}

bool World::remove_copy(NodeState& n, BundleId bundle, RemovalReason reason) {
    auto it = std::find_if(n.buffer.begin(), n.buffer.end(),
                           [&](const BundleCopy& c) { return c.bundle_id == bundle; });
    if (it == n.buffer.end()) {
        return false;
    }
    BundleCopy copy = std::move(*it);
    n.buffer.erase(it);
    n.buffer_used -= copy.size;
    after_removal(n, copy, reason);
    return true;
}

void World::after_removal(NodeState& n, const BundleCopy& copy, RemovalReason reason) {
    abort_outgoing(n, copy.bundle_id, copy.hop_count);
    if (reason != RemovalReason::handed_over) {
        emit(event_for(reason), copy, n.eid, std::nullopt, copy.hop_count, now_);
    }
    router_->on_copy_removed(*this, n, copy, reason);
}

BundleId World::create_bundle(NodeId source, NodeId destination) {
    NodeState& src = node(source);
    BundleCopy copy;
    copy.bundle_id = BundleId{next_bundle_++};
    copy.source = source;
    copy.destination = destination;
    copy.size = scenario_.message_size;
    copy.created_at = now_;
    copy.ttl = ttl_ticks_;
    copy.source_position = src.position();
    router_->on_created(*this, src, copy);
    emit(EventKind::created, copy, source, destination, 0, now_);
    const BundleId id = copy.bundle_id;
    insert_copy(src, std::move(copy));
    return id;
}

void World::expire_ttl() {
    for (NodeState& n : nodes_) {
        std::vector<BundleId> stale;
        for (const BundleCopy& c : n.buffer) {
            if (now_ - c.created_at > c.ttl) {
                stale.push_back(c.bundle_id);
            }
        }
        for (BundleId id : stale) {
            remove_copy(n, id, RemovalReason::expired);
        }
    }
}

void World::generate_traffic() {
    if (now_ % interval_ticks_ != 0) {
        return;
    }
    const auto n = static_cast<std::uint32_t>(nodes_.size());
    const auto src = std::uniform_int_distribution<std::uint32_t>(0, n - 1)(traffic_rng_);
    auto dst = std::uniform_int_distribution<std::uint32_t>(0, n - 2)(traffic_rng_);
    if (dst >= src) {
        ++dst;
    }
    create_bundle(NodeId{src}, NodeId{dst});
}

EventLog run(const Scenario& scenario, bool record_events) {
    World world(scenario, WorldOptions{.record_events = record_events, .initial_positions = std::nullopt});
    world.run_to_end();
    return std::move(world.log());
}

}  // namespace dtnsim
