#include "dtnsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "dtnsim/world.hpp"

namespace dtnsim {

namespace {

constexpr std::string_view kNames[] = {"message_interval", "buffer_size", "node_speed",
                                       "radius_R",         "node_count",  "sim_duration"};

std::string fmt_value(double v) { return fmt::format("{:g}", v); }

std::string fmt_ratio(double v) { return fmt::format("{:.6f}", v); }

std::string fmt_ratio(const std::optional<double>& v) { return v ? fmt_ratio(*v) : std::string("NA"); }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
}

RunResult execute_one(const SweepSpec& spec, Protocol protocol, double value, std::uint64_t seed,
                      const SweepOptions& options) {
    RunResult r{protocol, value, seed, std::nullopt, {}};
    try {
        Scenario s = apply_sweep_value(spec.base, spec.param, value);
        s.protocol = protocol;
        s.seed = seed;
        const bool keep = options.event_dir.has_value();
        const EventLog log = run(s, keep);
        if (keep) {
            std::ofstream out(*options.event_dir / event_log_name(protocol, spec.param, value, seed));
            log.write(out, s.clock_step);
            if (!out) {
                throw std::runtime_error("cannot write event log");
            }
        }
        r.report = metrics::compute_report(log);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

}  // namespace

std::string_view to_string(SweptParameter p) { return kNames[static_cast<int>(p)]; }

SweptParameter parse_swept_parameter(std::string_view name) {
    for (std::size_t i = 0; i < std::size(kNames); ++i) {
        if (kNames[i] == name) {
            return static_cast<SweptParameter>(i);
        }
    }
    if (name == "interval") return SweptParameter::message_interval;
    if (name == "buffer") return SweptParameter::buffer_size;
    if (name == "speed") return SweptParameter::node_speed;
    if (name == "range" || name == "radius") return SweptParameter::radius_R;
    if (name == "nodes") return SweptParameter::node_count;
    if (name == "duration") return SweptParameter::sim_duration;
    throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", name));
}

Scenario apply_sweep_value(Scenario base, SweptParameter param, double value) {
    switch (param) {
        case SweptParameter::message_interval:
            base.message_interval = value;
            break;
        case SweptParameter::buffer_size:
            base.buffer_size = static_cast<Bytes>(std::llround(value * 1e6));
            break;
        case SweptParameter::node_speed:
            base.node_speed = value;
            break;
        case SweptParameter::radius_R:
            base.radius = value;
            break;
        case SweptParameter::node_count:
            if (value != std::floor(value)) {
                throw ConfigError(fmt::format("node_count must be whole, got {}", value));
            }
            base.node_count = static_cast<int>(value);
            break;
        case SweptParameter::sim_duration:
            base.sim_duration = value * 3600.0;
            break;
    }
    return base;
}

void SweepSpec::validate() const {
    if (values.empty()) {
        throw ConfigError("sweep has no values");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i - 1] < values[i])) {
            throw ConfigError("sweep values must be strictly increasing");
        }
    }
    if (seeds.empty()) {
        throw ConfigError("sweep has no seeds");
    }
    if (std::set(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ConfigError("sweep seeds must be distinct");
    }
    if (protocols.empty()) {
        throw ConfigError("sweep has no protocols");
    }
    if (std::set(protocols.begin(), protocols.end()).size() != protocols.size()) {
        throw ConfigError("sweep protocols must be distinct");
    }
}

std::size_t SweepResult::failures() const {
    return static_cast<std::size_t>(
        std::count_if(runs.begin(), runs.end(), [](const RunResult& r) { return !r.report; }));
}

SweepResult execute_sweep(const SweepSpec& spec, const SweepOptions& options) {
    spec.validate();
    struct Job {
        Protocol protocol;
        double value;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (Protocol p : spec.protocols) {
        for (double v : spec.values) {
            for (std::uint64_t s : spec.seeds) {
                jobs.push_back({p, v, s});
            }
        }
    }

    SweepResult result;
    result.param = spec.param;
    result.runs.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            result.runs[i] = execute_one(spec, jobs[i].protocol, jobs[i].value, jobs[i].seed, options);
        }
    };
    const unsigned n = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) {
            pool.emplace_back(worker);
        }
    }
    return result;
}

std::vector<AggregateRow> aggregate_rows(const SweepResult& result) {
    std::vector<AggregateRow> rows;
    std::size_t i = 0;
    while (i < result.runs.size()) {
        const RunResult& head = result.runs[i];
        std::vector<metrics::MetricsReport> reports;
        std::size_t j = i;
        for (; j < result.runs.size() && result.runs[j].protocol == head.protocol && result.runs[j].value == head.value;
             ++j) {
            if (result.runs[j].report) {
                reports.push_back(*result.runs[j].report);
            }
        }
        if (!reports.empty()) {
            rows.push_back({head.protocol, head.value, metrics::aggregate(reports)});
        }
        i = j;
    }
    return rows;
}

std::string event_log_name(Protocol protocol, SweptParameter param, double value, std::uint64_t seed) {
    return fmt::format("{}_{}={}_seed{}.log", to_string(protocol), to_string(param), fmt_value(value), seed);
}

std::string runs_csv(const SweepResult& result) {
    std::string out = fmt::format(
        "protocol,{},seed,delivery_ratio,avg_hop_count,avg_hop_per_delivered,overhead_ratio,"
        "observed_max_hop,created,relayed,delivered\n",
        to_string(result.param));
    for (const RunResult& r : result.runs) {
        out += fmt::format("{},{},{},", to_string(r.protocol), fmt_value(r.value), r.seed);
        if (!r.report) {
            out += "NA,NA,NA,NA,NA,NA,NA,NA\n";
            continue;
        }
        const metrics::MetricsReport& m = *r.report;
        out += fmt::format("{},{},{},{},{},{},{},{}\n", fmt_ratio(m.delivery_ratio), fmt_ratio(m.avg_hop_count),
                           fmt_ratio(m.avg_hop_per_delivered), fmt_ratio(m.overhead_ratio), m.observed_max_hop,
                           m.created, m.relayed, m.delivered);
    }
    return out;
}

std::string aggregate_csv(const SweepResult& result) {
    std::string out = fmt::format(
        "protocol,{},seeds,delivery_ratio,delivery_ratio_sd,avg_hop_count,avg_hop_count_sd,"
        "avg_hop_per_delivered,avg_hop_per_delivered_sd,overhead_ratio,overhead_ratio_sd,"
        "overhead_undefined,observed_max_hop,created,relayed,delivered\n",
        to_string(result.param));
    for (const AggregateRow& row : aggregate_rows(result)) {
        const metrics::AggregateReport& a = row.report;
        const auto pair = [](const metrics::Summary& s) {
            return fmt::format("{},{}", fmt_ratio(s.mean), s.mean ? fmt_ratio(s.stddev) : std::string("NA"));
        };
        out += fmt::format("{},{},{},{},{},{},{},{},{},{:.3f},{:.3f},{:.3f}\n", to_string(row.protocol),
                           fmt_value(row.value), a.runs, pair(a.delivery_ratio), pair(a.avg_hop_count),
                           pair(a.avg_hop_per_delivered), pair(a.overhead_ratio), a.overhead_ratio.undefined,
                           a.observed_max_hop, a.created, a.relayed, a.delivered);
    }
    return out;
}

void write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "runs.csv", runs_csv(result));
    write_file(dir / "aggregate.csv", aggregate_csv(result));
    const auto failures_path = dir / "failures.txt";
    if (result.failures() == 0) {
        std::filesystem::remove(failures_path);
        return;
    }
    std::string text;
    for (const RunResult& r : result.runs) {
        if (!r.report) {
            text += fmt::format("{} {}={} seed={}: {}\n", to_string(r.protocol), to_string(result.param),
                                fmt_value(r.value), r.seed, r.error);
        }
    }
    write_file(failures_path, text);
}

SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& dir, unsigned jobs, bool verbose) {
    SweepOptions options{jobs, std::nullopt};
    if (verbose) {
        options.event_dir = dir / "events";
        std::filesystem::create_directories(*options.event_dir);
    }
    SweepResult result = execute_sweep(spec, options);
    write_sweep(result, dir);
    return result;
}

}  // namespace dtnsim
