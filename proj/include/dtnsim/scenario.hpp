#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dtnsim/bundle.hpp"
#include "dtnsim/geometry.hpp"

namespace dtnsim {

using Seconds = double;

enum class Protocol { grone, epidemic, spray_and_wait, first_contact, direct_delivery };

[[nodiscard]] std::string_view to_string(Protocol p);
/// Accepts the canonical names plus a few short aliases ("snw", "fc", "dd").
/// Throws std::invalid_argument on an unknown name.
[[nodiscard]] Protocol parse_protocol(std::string_view name);

/// Thrown when a scenario or configuration file is invalid.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All run parameters, in SI units (meters, seconds, bytes).
struct Scenario {
    Meters world_width{1000.0};
    Meters world_height{1000.0};
    int node_count{120};
    Meters radius{100.0};
    double node_speed{0.5};
    Bytes buffer_size{6'000'000};
    double bandwidth{250'000.0};  ///< bytes per second
    Bytes message_size{500'000};
    Seconds message_interval{40.0};
    Seconds ttl{20.0 * 60.0};
    Seconds sim_duration{5.0 * 3600.0};
    Seconds clock_step{0.1};
    Seconds hello_interval{1.0};
    Protocol protocol{Protocol::grone};
    std::uint64_t seed{1};
    Meters walk_leg_min{50.0};
    Meters walk_leg_max{200.0};
    std::uint32_t spray_tickets{18};
    /// Purge threshold as a fraction of the radio range.
    double purge_distance_ratio{0.5};

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;

    /// Converts a duration to whole clock steps (rounded to nearest).
    [[nodiscard]] Tick to_ticks(Seconds s) const;
    [[nodiscard]] Seconds to_seconds(Tick t) const { return static_cast<double>(t) * clock_step; }

    [[nodiscard]] Tick total_ticks() const { return to_ticks(sim_duration); }
    [[nodiscard]] Meters purge_distance() const { return purge_distance_ratio * radius; }
};

/// The full-size simulation settings: 120 nodes on a 1000 m square for 5 h.
[[nodiscard]] Scenario table2_scenario();

/// Scaled-down preset for quick experiments: 40 nodes on a 500 m square for
/// one hour, everything else as in the full preset.
[[nodiscard]] Scenario desk_scenario();

}  // namespace dtnsim
