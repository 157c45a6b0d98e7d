#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtnsim/metrics.hpp"
#include "dtnsim/scenario.hpp"

namespace dtnsim {

/// Scenario fields an experiment can vary. Sweep values are given in the
/// units of the settings table: message_interval s, buffer_size MB,
/// node_speed m/s, radius_R m, node_count nodes, sim_duration h.
enum class SweptParameter { message_interval, buffer_size, node_speed, radius_R, node_count, sim_duration };

[[nodiscard]] std::string_view to_string(SweptParameter p);
/// Throws std::invalid_argument on an unknown name.
[[nodiscard]] SweptParameter parse_swept_parameter(std::string_view name);

/// Returns `base` with the swept field set to `value`.
[[nodiscard]] Scenario apply_sweep_value(Scenario base, SweptParameter param, double value);

struct SweepSpec {
    Scenario base;
    SweptParameter param{SweptParameter::message_interval};
    std::vector<double> values;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::vector<Protocol> protocols{Protocol::grone};

    /// Values must be non-empty and strictly increasing, seeds non-empty
    /// and distinct, protocols non-empty and distinct. Throws ConfigError.
    void validate() const;
    [[nodiscard]] std::size_t run_count() const { return protocols.size() * values.size() * seeds.size(); }
};

struct RunResult {
    Protocol protocol{Protocol::grone};
    double value{0.0};
    std::uint64_t seed{0};
    std::optional<metrics::MetricsReport> report;
    std::string error;  ///< set when the run failed
};

struct SweepOptions {
    unsigned jobs{1};
    /// When set, every run writes its event log into this directory.
    std::optional<std::filesystem::path> event_dir;
};

struct SweepResult {
    SweptParameter param{SweptParameter::message_interval};
    /// Protocol-major, then value, then seed, each in the order the SweepSpec lists them.
    std::vector<RunResult> runs;

    [[nodiscard]] std::size_t failures() const;
};

/// Runs every (protocol, value, seed) combination, up to `jobs` at a time.
/// Run failures are recorded in the result, never thrown.
[[nodiscard]] SweepResult execute_sweep(const SweepSpec& spec, const SweepOptions& options = {});

struct AggregateRow {
    Protocol protocol{Protocol::grone};
    double value{0.0};
    metrics::AggregateReport report;
};

/// One row per (protocol, value) that has at least one successful run.
[[nodiscard]] std::vector<AggregateRow> aggregate_rows(const SweepResult& result);

/// File name of one run's event log inside the event directory.
[[nodiscard]] std::string event_log_name(Protocol protocol, SweptParameter param, double value, std::uint64_t seed);

/// Per-run table. Columns:
///   protocol,<param>,seed,delivery_ratio,avg_hop_count,avg_hop_per_delivered,
///   overhead_ratio,observed_max_hop,created,relayed,delivered
/// Undefined ratios and failed runs print NA.
[[nodiscard]] std::string runs_csv(const SweepResult& result);

/// Aggregated table. Columns:
///   protocol,<param>,seeds,delivery_ratio,delivery_ratio_sd,avg_hop_count,
///   avg_hop_count_sd,avg_hop_per_delivered,avg_hop_per_delivered_sd,
///   overhead_ratio,overhead_ratio_sd,overhead_undefined,observed_max_hop,
///   created,relayed,delivered
/// `seeds` counts the successful runs behind the row; the last three
/// columns are means over those runs.
[[nodiscard]] std::string aggregate_csv(const SweepResult& result);

/// Writes runs.csv and aggregate.csv into `dir`, plus failures.txt listing
/// failed runs when there are any.
void write_sweep(const SweepResult& result, const std::filesystem::path& dir);

/// execute_sweep followed by write_sweep. With `verbose`, event logs go to
/// `dir`/events.
SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& dir, unsigned jobs = 1,
                      bool verbose = false);

}  // namespace dtnsim
