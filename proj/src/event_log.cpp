#include "dtnsim/event_log.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace dtnsim {

namespace {

constexpr std::array<std::string_view, 8> kKindNames{
    "created", "started", "relayed", "delivered", "aborted", "dropped", "expired", "purged",
};

}  // namespace

std::string_view to_string(EventKind k) { return kKindNames.at(static_cast<std::size_t>(k)); }

std::optional<EventKind> parse_event_kind(std::string_view s) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == s) {
            return static_cast<EventKind>(i);
        }
    }
    return std::nullopt;
}

void EventLog::record(const Event& e) {
    switch (e.kind) {
    case EventKind::created:
        ++created_;
        break;
    case EventKind::relayed:
        ++relayed_;
        break;
    case EventKind::delivered:
        delivered_.push_back({e.bundle, e.hops});
        break;
    case EventKind::dropped:
        ++dropped_;
        break;
    case EventKind::expired:
        ++expired_;
        break;
    case EventKind::purged:
        ++purged_;
        break;
    case EventKind::aborted:
        ++aborted_;
        break;
    case EventKind::started:
        break;
    }
    if (keep_events_) {
        events_.push_back(e);
    }
}

void EventLog::write(std::ostream& os, double clock_step) const {
    os << "# time kind bundle node_a node_b hops\n";
    for (const Event& e : events_) {
        const double seconds = static_cast<double>(e.time) * clock_step;
        if (e.node_b) {
            fmt::print(os, "{:.3f} {} {} {} {} {}\n", seconds, to_string(e.kind), e.bundle.value,
                       e.node_a.value, e.node_b->value, e.hops);
        } else {
            fmt::print(os, "{:.3f} {} {} {} - {}\n", seconds, to_string(e.kind), e.bundle.value,
                       e.node_a.value, e.hops);
        }
    }
}

EventLog EventLog::parse(std::istream& is, double clock_step) {
    EventLog log(true);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream fields(line);
        double seconds = 0.0;
        std::string kind;
        std::uint32_t bundle = 0;
        std::uint32_t a = 0;
        std::string b;
        int hops = 0;
        if (!(fields >> seconds >> kind >> bundle >> a >> b >> hops)) {
            throw std::runtime_error(fmt::format("event log line {}: malformed record", line_no));
        }
        const auto k = parse_event_kind(kind);
        if (!k) {
            throw std::runtime_error(fmt::format("event log line {}: unknown kind '{}'", line_no, kind));
        }
        Event e{
            .time = std::llround(seconds / clock_step),
            .kind = *k,
            .bundle = BundleId{bundle},
            .node_a = NodeId{a},
            .node_b = std::nullopt,
            .hops = hops,
        };
        if (b != "-") {
            e.node_b = NodeId{static_cast<std::uint32_t>(std::stoul(b))};
        }
        log.record(e);
    }
    return log;
}

}  // namespace dtnsim
