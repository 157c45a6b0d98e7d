#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dtnsim/config.hpp"

using namespace dtnsim;

TEST_CASE("empty configuration yields the full default settings") {
    const Scenario s = parse_scenario_text("");
    CHECK(s.node_count == 120);
    CHECK(s.radius == 100.0);
    CHECK(s.node_speed == 0.5);
    CHECK(s.buffer_size == 6'000'000);
    CHECK(s.message_interval == 40.0);
    CHECK(s.ttl == 1200.0);
    CHECK(s.sim_duration == 18000.0);
    CHECK(s.clock_step == 0.1);
    CHECK(s.message_size == 500'000);
    CHECK(s.bandwidth == 250'000.0);
    CHECK(s.spray_tickets == 18);
    CHECK(s.world_width == 1000.0);
    CHECK(s.world_height == 1000.0);
}

TEST_CASE("settings use their table units unless a suffix is given") {
    const Scenario s = parse_scenario_text(R"(
# buffer sweep lower bound
node_buffer_size = 2MB
message_ttl = 30
simulation_time = 90 min
message_size = 250
transmission_speed = 1 MBps
world_size = 500
protocol = epidemic
seed = 18446744073709551615
)");
    CHECK(s.buffer_size == 2'000'000);
    CHECK(s.ttl == 1800.0);
    CHECK(s.sim_duration == 5400.0);
    CHECK(s.message_size == 250'000);
    CHECK(s.bandwidth == 1'000'000.0);
    CHECK(s.world_width == 500.0);
    CHECK(s.world_height == 500.0);
    CHECK(s.protocol == Protocol::epidemic);
    CHECK(s.seed == 18446744073709551615ULL);
}

TEST_CASE("omitted keys keep the base scenario") {
    const Scenario s = parse_scenario_text("transmission_range = 60\n", desk_scenario());
    CHECK(s.node_count == 40);
    CHECK(s.radius == 60.0);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS((void)parse_scenario_text("node_moving_speed=-1"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("clock_step=0"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("warp_factor=9"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("number_of_nodes=ten"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("number_of_nodes=10.5"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("node_buffer_size=2 parsecs"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("seed=1\nseed=2"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("movement_model=levy_walk"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("protocol=prophet"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("just some text"), ConfigError);
    CHECK_THROWS_AS((void)parse_scenario_text("message_size=7MB"), ConfigError);
}

TEST_CASE("scenario files are read from disk") {
    const auto path = std::filesystem::temp_directory_path() / "dtnsim_config_test.cfg";
    {
        std::ofstream out(path);
        out << "number_of_nodes = 12\nmovement_model = random_walk\n";
    }
    CHECK(parse_scenario(path).node_count == 12);
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)parse_scenario(path), ConfigError);
}
