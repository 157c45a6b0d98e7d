#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "dtnsim/event_log.hpp"

namespace dtnsim::metrics {

/// Per-run figures of merit.
///
///   delivery_ratio = delivered / created
///   avg_hop_count  = (sum of hop counts of delivered bundles) / created
///   overhead_ratio = (relayed - delivered) / delivered
///
/// avg_hop_count divides by created bundles, not delivered ones;
/// avg_hop_per_delivered is the conventional per-delivery mean. Ratios with
/// a zero denominator are nullopt, except that a run that created nothing
/// reports zero delivery ratio and hop count.
struct MetricsReport {
    double delivery_ratio{0.0};
    double avg_hop_count{0.0};
    std::optional<double> avg_hop_per_delivered;
    std::optional<double> overhead_ratio;
    int observed_max_hop{0};
    std::int64_t created{0};
    std::int64_t relayed{0};
    std::int64_t delivered{0};
};

[[nodiscard]] MetricsReport compute_report(const EventLog& log);

struct Summary {
    std::optional<double> mean;
    double stddev{0.0};  ///< sample standard deviation; 0 for fewer than two values
    std::size_t undefined{0};
};

struct AggregateReport {
    std::size_t runs{0};
    Summary delivery_ratio;
    Summary avg_hop_count;
    Summary avg_hop_per_delivered;
    Summary overhead_ratio;
    int observed_max_hop{0};  ///< maximum over runs
    double created{0.0};      ///< means over runs
    double relayed{0.0};
    double delivered{0.0};
};

/// Mean and sample deviation per metric. Undefined values are left out of
/// the mean and counted. Throws std::invalid_argument on empty input.
[[nodiscard]] AggregateReport aggregate(std::span<const MetricsReport> reports);

}  // namespace dtnsim::metrics
