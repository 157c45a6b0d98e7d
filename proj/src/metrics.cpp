#include "dtnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dtnsim::metrics {

MetricsReport compute_report(const EventLog& log) {
    MetricsReport r;
    r.created = log.created();
    r.relayed = log.relayed();
    r.delivered = log.delivered();
    std::int64_t hop_sum = 0;
    for (const DeliveredBundle& d : log.delivered_bundles()) {
        hop_sum += d.hops;
        r.observed_max_hop = std::max(r.observed_max_hop, d.hops);
    }
    if (r.created > 0) {
        r.delivery_ratio = static_cast<double>(r.delivered) / static_cast<double>(r.created);
        r.avg_hop_count = static_cast<double>(hop_sum) / static_cast<double>(r.created);
    }
    if (r.delivered > 0) {
        r.avg_hop_per_delivered = static_cast<double>(hop_sum) / static_cast<double>(r.delivered);
        r.overhead_ratio =
            static_cast<double>(r.relayed - r.delivered) / static_cast<double>(r.delivered);
    }
    return r;
}

namespace {

Summary summarize(const std::vector<std::optional<double>>& values) {
    Summary s;
    std::vector<double> defined;
    for (const auto& v : values) {
        if (v) {
            defined.push_back(*v);
        } else {
            ++s.undefined;
        }
    }
    if (defined.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : defined) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(defined.size());
    s.mean = mean;
    if (defined.size() > 1) {
        double sq = 0.0;
        for (double v : defined) {
            sq += (v - mean) * (v - mean);
        }
        s.stddev = std::sqrt(sq / static_cast<double>(defined.size() - 1));
    }
    return s;
}

template <typename F>
Summary summarize_by(std::span<const MetricsReport> reports, F field) {
    std::vector<std::optional<double>> values;
    values.reserve(reports.size());
    for (const MetricsReport& r : reports) {
        values.push_back(field(r));
    }
    return summarize(values);
}

}  // namespace

AggregateReport aggregate(std::span<const MetricsReport> reports) {
    if (reports.empty()) {
        throw std::invalid_argument("aggregate: no reports");
    }
    AggregateReport a;
    a.runs = reports.size();
    a.delivery_ratio = summarize_by(reports, [](const auto& r) { return std::optional(r.delivery_ratio); });
    a.avg_hop_count = summarize_by(reports, [](const auto& r) { return std::optional(r.avg_hop_count); });
    a.avg_hop_per_delivered = summarize_by(reports, [](const auto& r) { return r.avg_hop_per_delivered; });
    a.overhead_ratio = summarize_by(reports, [](const auto& r) { return r.overhead_ratio; });
    const auto n = static_cast<double>(reports.size());
    for (const MetricsReport& r : reports) {
        a.observed_max_hop = std::max(a.observed_max_hop, r.observed_max_hop);
        a.created += static_cast<double>(r.created) / n;
        a.relayed += static_cast<double>(r.relayed) / n;
        a.delivered += static_cast<double>(r.delivered) / n;
    }
    return a;
}

}  // namespace dtnsim::metrics
