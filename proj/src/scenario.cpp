#include "dtnsim/scenario.hpp"

#include <cmath>

#include <fmt/format.h>

namespace dtnsim {

std::string_view to_string(Protocol p) {
    switch (p) {
    case Protocol::grone:
        return "grone";
    case Protocol::epidemic:
        return "epidemic";
    case Protocol::spray_and_wait:
        return "spray_and_wait";
    case Protocol::first_contact:
        return "first_contact";
    case Protocol::direct_delivery:
        return "direct_delivery";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "grone") {
        return Protocol::grone;
    }
    if (name == "epidemic") {
        return Protocol::epidemic;
    }
    if (name == "spray_and_wait" || name == "snw" || name == "binary_spray_and_wait") {
        return Protocol::spray_and_wait;
    }
    if (name == "first_contact" || name == "fc") {
        return Protocol::first_contact;
    }
    if (name == "direct_delivery" || name == "dd") {
        return Protocol::direct_delivery;
    }
    throw std::invalid_argument(fmt::format("unknown protocol '{}'", name));
}

Tick Scenario::to_ticks(Seconds s) const { return std::llround(s / clock_step); }

namespace {

void require(bool ok, std::string_view what) {
    if (!ok) {
        throw ConfigError(std::string(what));
    }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void Scenario::validate() const {
    require(positive(clock_step), "clock_step must be positive");
    require(positive(world_width) && positive(world_height), "world dimensions must be positive");
    require(node_count >= 2, "number_of_nodes must be at least 2");
    require(positive(radius), "transmission_range must be positive");
    require(positive(node_speed), "node_moving_speed must be positive");
    require(buffer_size > 0, "node_buffer_size must be positive");
    require(positive(bandwidth), "transmission_speed must be positive");
    require(message_size > 0, "message_size must be positive");
    require(message_size <= buffer_size, "message_size must not exceed node_buffer_size");
    require(positive(ttl), "message_ttl must be positive");
    require(std::isfinite(sim_duration) && sim_duration >= 0.0, "simulation_time must be non-negative");
    const double steps = sim_duration / clock_step;
    require(std::abs(steps - std::round(steps)) <= 1e-6 * std::max(1.0, steps),
            "simulation_time must be a multiple of clock_step");
    require(positive(message_interval) && to_ticks(message_interval) >= 1,
            "message_interval must be at least one clock step");
    require(positive(hello_interval) && to_ticks(hello_interval) >= 1,
            "hello_interval must be at least one clock step");
    require(positive(walk_leg_min) && walk_leg_max >= walk_leg_min && std::isfinite(walk_leg_max),
            "walk leg range must satisfy 0 < walk_leg_min <= walk_leg_max");
    require(spray_tickets >= 1, "tickets_in_binary_sw must be at least 1");
    require(purge_distance_ratio > 0.0 && purge_distance_ratio < 1.0,
            "purge_distance_ratio must lie in (0, 1)");
}

Scenario table2_scenario() { return Scenario{}; }

Scenario desk_scenario() {
    Scenario s;
    s.node_count = 40;
    s.world_width = 500.0;
    s.world_height = 500.0;
    s.sim_duration = 3600.0;
    return s;
}

}  // namespace dtnsim
