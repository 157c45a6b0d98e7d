#include "dtnsim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

namespace dtnsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Quantity {
    double number{0.0};
    std::string unit;
};

Quantity split_quantity(std::string_view key, std::string_view value) {
    Quantity q;
    const char* begin = value.data();
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, q.number);
    if (ec != std::errc{} || !std::isfinite(q.number)) {
        throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", key, value));
    }
    q.unit = std::string(trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr))));
    return q;
}

double scaled(std::string_view key, const Quantity& q, const std::map<std::string, double, std::less<>>& units,
              std::string_view default_unit) {
    const std::string_view unit = q.unit.empty() ? default_unit : std::string_view(q.unit);
    const auto it = units.find(unit);
    if (it == units.end()) {
        throw ConfigError(fmt::format("{}: unknown unit '{}'", key, unit));
    }
    return q.number * it->second;
}

const std::map<std::string, double, std::less<>> kSizeUnits{
    {"B", 1.0}, {"KB", 1e3}, {"MB", 1e6}, {"GB", 1e9}};
const std::map<std::string, double, std::less<>> kDurationUnits{
    {"ms", 1e-3}, {"s", 1.0}, {"min", 60.0}, {"h", 3600.0}};
const std::map<std::string, double, std::less<>> kRateUnits{
    {"Bps", 1.0}, {"KBps", 1e3}, {"MBps", 1e6}};
const std::map<std::string, double, std::less<>> kLengthUnits{{"m", 1.0}, {"km", 1e3}};
const std::map<std::string, double, std::less<>> kSpeedUnits{{"m/s", 1.0}};
const std::map<std::string, double, std::less<>> kPlainUnits{{"", 1.0}};

double plain(std::string_view key, std::string_view value) {
    return scaled(key, split_quantity(key, value), kPlainUnits, "");
}

template <typename Int>
Int integer(std::string_view key, std::string_view value) {
    const double v = plain(key, value);
    if (v != std::floor(v) || v < static_cast<double>(std::numeric_limits<Int>::min()) ||
        v > static_cast<double>(std::numeric_limits<Int>::max())) {
        throw ConfigError(fmt::format("{}: '{}' is not a valid integer", key, value));
    }
    return static_cast<Int>(v);
}

std::uint64_t seed_value(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not an unsigned 64-bit integer", key, value));
    }
    return out;
}

Bytes byte_count(std::string_view key, std::string_view value, std::string_view default_unit) {
    return static_cast<Bytes>(std::llround(scaled(key, split_quantity(key, value), kSizeUnits, default_unit)));
}

double duration(std::string_view key, std::string_view value, std::string_view default_unit) {
    return scaled(key, split_quantity(key, value), kDurationUnits, default_unit);
}

using Setter = std::function<void(Scenario&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table{
        {"number_of_nodes", [](Scenario& s, auto k, auto v) { s.node_count = integer<int>(k, v); }},
        {"world_size",
         [](Scenario& s, auto k, auto v) {
             s.world_width = scaled(k, split_quantity(k, v), kLengthUnits, "m");
             s.world_height = s.world_width;
         }},
        {"world_width",
         [](Scenario& s, auto k, auto v) { s.world_width = scaled(k, split_quantity(k, v), kLengthUnits, "m"); }},
        {"world_height",
         [](Scenario& s, auto k, auto v) { s.world_height = scaled(k, split_quantity(k, v), kLengthUnits, "m"); }},
        {"tickets_in_binary_sw",
         [](Scenario& s, auto k, auto v) { s.spray_tickets = integer<std::uint32_t>(k, v); }},
        {"message_ttl", [](Scenario& s, auto k, auto v) { s.ttl = duration(k, v, "min"); }},
        {"simulation_time", [](Scenario& s, auto k, auto v) { s.sim_duration = duration(k, v, "h"); }},
        {"message_size", [](Scenario& s, auto k, auto v) { s.message_size = byte_count(k, v, "KB"); }},
        {"node_buffer_size", [](Scenario& s, auto k, auto v) { s.buffer_size = byte_count(k, v, "MB"); }},
        {"transmission_range",
         [](Scenario& s, auto k, auto v) { s.radius = scaled(k, split_quantity(k, v), kLengthUnits, "m"); }},
        {"node_moving_speed",
         [](Scenario& s, auto k, auto v) { s.node_speed = scaled(k, split_quantity(k, v), kSpeedUnits, "m/s"); }},
        {"movement_model",
         [](Scenario&, auto k, auto v) {
             if (v != "random_walk" && v != "RandomWalk" && v != "Random Walk") {
                 throw ConfigError(fmt::format("{}: only random_walk is supported, got '{}'", k, v));
             }
         }},
        {"message_interval", [](Scenario& s, auto k, auto v) { s.message_interval = duration(k, v, "s"); }},
        {"transmission_speed",
         [](Scenario& s, auto k, auto v) { s.bandwidth = scaled(k, split_quantity(k, v), kRateUnits, "KBps"); }},
        {"clock_step", [](Scenario& s, auto k, auto v) { s.clock_step = duration(k, v, "s"); }},
        {"hello_interval", [](Scenario& s, auto k, auto v) { s.hello_interval = duration(k, v, "s"); }},
        {"seed", [](Scenario& s, auto k, auto v) { s.seed = seed_value(k, v); }},
        {"protocol",
         [](Scenario& s, auto k, auto v) {
             try {
                 s.protocol = parse_protocol(v);
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(fmt::format("{}: {}", k, e.what()));
             }
         }},
        {"walk_leg_min",
         [](Scenario& s, auto k, auto v) { s.walk_leg_min = scaled(k, split_quantity(k, v), kLengthUnits, "m"); }},
        {"walk_leg_max",
         [](Scenario& s, auto k, auto v) { s.walk_leg_max = scaled(k, split_quantity(k, v), kLengthUnits, "m"); }},
        {"purge_distance_ratio", [](Scenario& s, auto k, auto v) { s.purge_distance_ratio = plain(k, v); }},
    };
    return table;
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const Scenario& base) {
    Scenario s = base;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected key = value", line_no));
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key));
        }
        if (!seen.emplace(key).second) {
            throw ConfigError(fmt::format("line {}: '{}' given twice", line_no, key));
        }
        if (value.empty()) {
            throw ConfigError(fmt::format("line {}: '{}' has no value", line_no, key));
        }
        try {
            it->second(s, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    s.validate();
    return s;
}

Scenario parse_scenario(const std::filesystem::path& path, const Scenario& base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open scenario file '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), base);
}

}  // namespace dtnsim
