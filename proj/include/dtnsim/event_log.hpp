#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "dtnsim/bundle.hpp"
#include "dtnsim/ids.hpp"

namespace dtnsim {

enum class EventKind { created, started, relayed, delivered, aborted, dropped, expired, purged };

[[nodiscard]] std::string_view to_string(EventKind k);
[[nodiscard]] std::optional<EventKind> parse_event_kind(std::string_view s);

/// One line of the event stream.
///
/// node_a/node_b by kind: created (source, destination), started / relayed /
/// delivered / aborted (sender, receiver), dropped / expired / purged (holder, none).
/// `hops` is the hop count of the copy the event concerns; for relayed and
/// delivered it is the count after the hop.
struct Event {
    Tick time{0};
    EventKind kind{EventKind::created};
    BundleId bundle;
    NodeId node_a;
    std::optional<NodeId> node_b;
    int hops{0};

    friend bool operator==(const Event&, const Event&) = default;
};

struct DeliveredBundle {
    BundleId bundle;
    int hops{0};
};

/// Counters for every run plus, optionally, the full event stream.
///
/// M_delivered counts first arrivals at the destination only; M_relayed
/// counts every completed transfer, including the delivering one.
class EventLog {
public:
    explicit EventLog(bool keep_events = false) : keep_events_(keep_events) {}

    void record(const Event& e);

    [[nodiscard]] bool keeps_events() const { return keep_events_; }
    [[nodiscard]] const std::vector<Event>& events() const { return events_; }
    [[nodiscard]] const std::vector<DeliveredBundle>& delivered_bundles() const { return delivered_; }

    [[nodiscard]] std::int64_t created() const { return created_; }
    [[nodiscard]] std::int64_t relayed() const { return relayed_; }
    [[nodiscard]] std::int64_t delivered() const { return static_cast<std::int64_t>(delivered_.size()); }
    [[nodiscard]] std::int64_t dropped() const { return dropped_; }
    [[nodiscard]] std::int64_t expired() const { return expired_; }
    [[nodiscard]] std::int64_t purged() const { return purged_; }
    [[nodiscard]] std::int64_t aborted() const { return aborted_; }

    /// Writes the stream as text, one event per line:
    ///   <seconds> <kind> <bundle> <node_a> <node_b|-> <hops>
    /// Seconds are printed with millisecond precision.
    void write(std::ostream& os, double clock_step) const;

    /// Reads a stream produced by write(). Throws std::runtime_error on a
    /// malformed line.
    [[nodiscard]] static EventLog parse(std::istream& is, double clock_step);

private:
    bool keep_events_{false};
    std::vector<Event> events_;
    std::vector<DeliveredBundle> delivered_;
    std::int64_t created_{0};
    std::int64_t relayed_{0};
    std::int64_t dropped_{0};
    std::int64_t expired_{0};
    std::int64_t purged_{0};
    std::int64_t aborted_{0};
};

}  // namespace dtnsim
