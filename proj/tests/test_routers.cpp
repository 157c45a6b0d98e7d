#include <doctest.h>

#include <algorithm>
#include <map>

#include "dtnsim/baseline_routers.hpp"
#include "dtnsim/grone_router.hpp"
#include "dtnsim/metrics.hpp"
#include "support.hpp"

using namespace dtnsim;

namespace {

World still_world(Scenario s, std::vector<Position> positions) {
    s.node_count = static_cast<int>(positions.size());
    return World(s, WorldOptions{.record_events = true,
                                 .initial_positions = std::move(positions),
                                 .stationary = true,
                                 .generate_traffic = false});
}

int copies_of(const World& w, BundleId id) {
    int n = 0;
    for (const NodeState& node : w.nodes()) {
        n += node.holds(id) ? 1 : 0;
    }
    return n;
}

}  // namespace

TEST_CASE("close relay pair converges to one copy") {
    for (bool swap : {false, true}) {
        const auto counts = testing::purge_pair_copies(0.4, swap, {2.0, 10.0, 60.0});
        CHECK(counts == std::vector<int>{1, 1, 1});
    }
}

TEST_CASE("close pair with the source keeps the source copy") {
    for (int source : {0, 1}) {
        const auto counts = testing::purge_pair_copies(0.4, false, {2.0, 30.0}, source);
        CHECK(counts == std::vector<int>{1, 1});
    }
}

TEST_CASE("pair beyond the purge distance keeps both copies") {
    for (bool swap : {false, true}) {
        CHECK(testing::purge_pair_copies(0.6, swap, {2.0, 60.0}) == std::vector<int>{2, 2});
    }
}

TEST_CASE("source bootstraps to the nearest neighbour and both copies gain anchors") {
    Scenario s = testing::small_scenario(4);
    s.protocol = Protocol::grone;
    World w = still_world(s, {{200, 200}, {260, 200}, {200, 290}, {480, 480}});
    const BundleId id = w.create_bundle(NodeId{0}, NodeId{3});
    while (w.now() < s.to_ticks(40) && !w.finished()) {
        w.step();
    }
    const BundleCopy* at_source = w.node(NodeId{0}).find(id);
    const BundleCopy* at_near = w.node(NodeId{1}).find(id);
    REQUIRE(at_source != nullptr);
    REQUIRE(at_near != nullptr);
    REQUIRE(at_source->anchor.has_value());
    REQUIRE(at_near->anchor.has_value());
    CHECK(*at_source->anchor == Position{260, 200});
    CHECK(*at_near->anchor == Position{200, 200});
    CHECK(at_near->hop_count == 1);
}

TEST_CASE("grone delivers directly when the destination is a neighbour") {
    Scenario s = testing::small_scenario(3);
    s.protocol = Protocol::grone;
    World w = still_world(s, {{100, 100}, {150, 100}, {120, 140}});
    w.create_bundle(NodeId{0}, NodeId{2});
    while (w.now() < s.to_ticks(60) && !w.finished()) {
        w.step();
    }
    CHECK(w.log().delivered() == 1);
    const auto& events = w.log().events();
    const auto delivery = std::find_if(events.begin(), events.end(),
                                       [](const Event& e) { return e.kind == EventKind::delivered; });
    REQUIRE(delivery != events.end());
    CHECK(delivery->node_a == NodeId{0});
    CHECK(delivery->hops == 1);
}

TEST_CASE("a grone copy serves each forward sector once") {
    Scenario s = testing::small_scenario(6);
    s.protocol = Protocol::grone;
    s.sim_duration = 120.0;
    // Node 1 holds a relay copy anchored west of it; sector A and B
    // candidates sit north-east and south-east.
    World w = still_world(s, {{100, 250}, {180, 250}, {250, 300}, {250, 200}, {240, 260}, {480, 480}});
    const BundleId id = w.create_bundle(NodeId{0}, NodeId{5});
    BundleCopy c = *w.node(NodeId{0}).find(id);
    c.hop_count = 1;
    c.anchor = Position{100, 250};
    c.replicated_to = {NodeId{0}};
    w.insert_copy(w.node(NodeId{1}), c);
    w.remove_copy(w.node(NodeId{0}), id, RemovalReason::dropped);
    while (w.now() < s.to_ticks(100) && !w.finished()) {
        w.step();
    }
    std::map<std::uint32_t, int> received;
    for (const Event& e : w.log().events()) {
        if (e.kind == EventKind::relayed && e.node_a == NodeId{1}) {
            ++received[e.node_b->value];
        }
    }
    CHECK(received.size() == 2);
    CHECK(received.count(2) == 1);
    CHECK(received.count(3) == 1);
}

TEST_CASE("spray and wait conserves tickets in a short run") {
    Scenario s = dtnsim::desk_scenario();
    s.protocol = Protocol::spray_and_wait;
    s.sim_duration = 900.0;
    World w(s);
    auto& router = dynamic_cast<SprayAndWaitRouter&>(w.router());
    while (!w.finished()) {
        w.step();
        std::map<BundleId, std::uint32_t> live;
        for (const NodeState& n : w.nodes()) {
            for (const BundleCopy& c : n.buffer) {
                REQUIRE(c.tickets >= 1);
                live[c.bundle_id] += c.tickets;
            }
        }
        for (const auto& [id, tickets] : live) {
            REQUIRE(tickets + router.tickets_destroyed(id) == 18);
        }
    }
}

TEST_CASE("first contact keeps a single copy and a loop-free record") {
    Scenario s = dtnsim::desk_scenario();
    s.protocol = Protocol::first_contact;
    s.sim_duration = 900.0;
    World w(s);
    while (!w.finished()) {
        w.step();
        std::map<BundleId, int> count;
        for (const NodeState& n : w.nodes()) {
            for (const BundleCopy& c : n.buffer) {
                ++count[c.bundle_id];
                std::vector<NodeId> v = c.visited;
                std::sort(v.begin(), v.end());
                REQUIRE(std::adjacent_find(v.begin(), v.end()) == v.end());
                REQUIRE(std::find(v.begin(), v.end(), n.eid) != v.end());
            }
        }
        for (const auto& [id, k] : count) {
            REQUIRE(k == 1);
        }
    }
}

TEST_CASE("direct delivery relays exactly what it delivers") {
    Scenario s = dtnsim::desk_scenario();
    s.protocol = Protocol::direct_delivery;
    s.sim_duration = 1800.0;
    const auto report = metrics::compute_report(run(s));
    REQUIRE(report.delivered > 0);
    CHECK(report.relayed == report.delivered);
    CHECK(report.overhead_ratio == 0.0);
}

TEST_CASE("epidemic equalizes two buffers over an uninterrupted contact") {
    Scenario s = testing::small_scenario(4);
    s.protocol = Protocol::epidemic;
    s.sim_duration = 240.0;
    World w = still_world(s, {{100, 100}, {150, 100}, {480, 480}, {480, 20}});
    const BundleId a1 = w.create_bundle(NodeId{0}, NodeId{2});
    const BundleId a2 = w.create_bundle(NodeId{0}, NodeId{3});
    const BundleId b1 = w.create_bundle(NodeId{1}, NodeId{2});
    while (w.now() < s.to_ticks(200) && !w.finished()) {
        w.step();
    }
    for (BundleId id : {a1, a2, b1}) {
        CHECK(w.node(NodeId{0}).holds(id));
        CHECK(w.node(NodeId{1}).holds(id));
        CHECK(copies_of(w, id) == 2);
    }
    CHECK(w.node(NodeId{0}).summary_vector() == w.node(NodeId{1}).summary_vector());
}
