#pragma once

#include <filesystem>
#include <string_view>

#include "dtnsim/scenario.hpp"

namespace dtnsim {

/// Reads a line-oriented `key = value` scenario file.
///
/// Keys use the simulation-settings names in snake_case:
///
///   number_of_nodes        count
///   world_size             side of the square world, m (sets width and height)
///   world_width            m
///   world_height           m
///   tickets_in_binary_sw   count
///   message_ttl            min
///   simulation_time        h
///   message_size           KB
///   node_buffer_size       MB
///   transmission_range     m
///   node_moving_speed      m/s
///   movement_model         random_walk
///   message_interval       s
///   transmission_speed     KBps
///
/// plus the simulator knobs clock_step (s), hello_interval (s), seed,
/// protocol, walk_leg_min (m), walk_leg_max (m) and purge_distance_ratio.
///
/// A value may carry an explicit unit suffix that overrides the default:
/// B, KB, MB, GB for sizes; ms, s, min, h for durations. Units are decimal
/// (1 KB = 1000 B). '#' starts a comment. Keys left out keep the value from
/// `base`. Unknown keys, repeated keys, unparsable values and scenarios that
/// fail validation raise ConfigError.
[[nodiscard]] Scenario parse_scenario_text(std::string_view text, const Scenario& base = table2_scenario());

/// Same as parse_scenario_text on the file contents. A missing file raises
/// ConfigError.
[[nodiscard]] Scenario parse_scenario(const std::filesystem::path& path,
                                      const Scenario& base = table2_scenario());

}  // namespace dtnsim
