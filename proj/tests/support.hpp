#pragma once

// Shared scaffolding for the test binaries: a seeded value generator for
// property tests and a few builders for protocol state.

#include <cstdint>
#include <random>
#include <vector>

#include "dtnsim/bundle.hpp"
#include "dtnsim/geometry.hpp"
#include "dtnsim/scenario.hpp"
#include "dtnsim/world.hpp"

namespace testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    dtnsim::Position point(double extent) { return {uniform(-extent, extent), uniform(-extent, extent)}; }

    /// A point at distance in (0, radius] from `centre` in a random direction.
    dtnsim::Position point_within(dtnsim::Position centre, double radius) {
        const double r = radius * std::sqrt(uniform(1e-9, 1.0));
        const double a = uniform(0.0, 2.0 * 3.141592653589793);
        return {centre.x + r * std::cos(a), centre.y + r * std::sin(a)};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline dtnsim::BundleCopy make_copy(std::uint32_t id, std::uint32_t source, std::uint32_t destination) {
    dtnsim::BundleCopy c;
    c.bundle_id = dtnsim::BundleId{id};
    c.source = dtnsim::NodeId{source};
    c.destination = dtnsim::NodeId{destination};
    c.size = 500'000;
    c.ttl = 12'000;
    return c;
}

/// Small, quiet scenario for engine tests: traffic and motion are switched
/// off by the caller through WorldOptions as needed.
inline dtnsim::Scenario small_scenario(int nodes) {
    dtnsim::Scenario s = dtnsim::desk_scenario();
    s.node_count = nodes;
    s.sim_duration = 60.0;
    return s;
}

/// Two stationary GRONE nodes 0 and 1, `gap` apart (as a fraction of the
/// range), both holding a copy of one bundle. `source` picks the bundle's
/// source: 0 or 1 for a member of the pair, anything else for a far-away
/// node, in which case both pair copies are relay copies. With `swap`, node 0
/// sits on the right instead of the left. Returns the pair's surviving copy
/// count at each of `checkpoints` (seconds).
inline std::vector<int> purge_pair_copies(double gap, bool swap, std::vector<double> checkpoints, int source = -1) {
    using namespace dtnsim;
    Scenario s = desk_scenario();
    s.protocol = Protocol::grone;
    s.node_count = 4;
    s.sim_duration = checkpoints.back() + 1.0;
    const double r = s.radius;
    Position left{100, 100};
    Position right{100 + gap * r, 100};
    if (swap) {
        std::swap(left, right);
    }
    World w(s, WorldOptions{.record_events = false,
                            .initial_positions = std::vector<Position>{left, right, {450, 450}, {450, 100}},
                            .stationary = true,
                            .generate_traffic = false});
    const NodeId origin{source == 0 || source == 1 ? static_cast<std::uint32_t>(source) : 2u};
    const BundleId id = w.create_bundle(origin, NodeId{3});
    for (std::uint32_t holder : {0u, 1u}) {
        if (NodeId{holder} == origin) {
            continue;
        }
        BundleCopy c = *w.node(origin).find(id);
        c.hop_count = 1;
        c.anchor = w.node(origin).position();
        w.insert_copy(w.node(NodeId{holder}), c);
    }
    std::vector<int> counts;
    for (double t : checkpoints) {
        while (w.now() < s.to_ticks(t)) {
            w.step();
        }
        counts.push_back(static_cast<int>(w.node(NodeId{0}).holds(id)) + static_cast<int>(w.node(NodeId{1}).holds(id)));
    }
    return counts;
}

}  // namespace testing
