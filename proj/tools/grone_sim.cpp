// Command-line front end: single runs and parameter sweeps.
//
//   grone_sim run   [--preset desk|table2] [--scenario FILE] [--protocol P] [--seed N] [--events FILE]
//   grone_sim sweep [--preset desk|table2] [--scenario FILE] --param NAME --values V,... [--range LO:HI:STEP]
//                   [--protocols P,...] [--seeds S,...] [--out DIR] [--verbose] [--jobs N]
//
// GRONE_OUTPUT_DIR, when set, replaces the sweep output directory.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dtnsim/config.hpp"
#include "dtnsim/metrics.hpp"
#include "dtnsim/sweep.hpp"
#include "dtnsim/world.hpp"

namespace {

using namespace dtnsim;

struct CommonArgs {
    std::string preset{"table2"};
    std::string scenario_path;
};

Scenario load_base(const CommonArgs& args) {
    Scenario base;
    if (args.preset == "desk") {
        base = desk_scenario();
    } else if (args.preset == "table2") {
        base = table2_scenario();
    } else {
        throw ConfigError(fmt::format("unknown preset '{}'", args.preset));
    }
    if (!args.scenario_path.empty()) {
        base = parse_scenario(args.scenario_path, base);
    }
    return base;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--preset", args.preset, "Base settings: desk or table2")
        ->check(CLI::IsMember({"desk", "table2"}));
    cmd->add_option("--scenario", args.scenario_path, "key=value scenario file applied over the preset")
        ->check(CLI::ExistingFile);
}

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string("NA"); }

int cmd_run(const CommonArgs& common, const std::string& protocol, std::optional<std::uint64_t> seed,
            const std::string& events_path) {
    Scenario s = load_base(common);
    if (!protocol.empty()) {
        s.protocol = parse_protocol(protocol);
    }
    if (seed) {
        s.seed = *seed;
    }
    const EventLog log = run(s, !events_path.empty());
    if (!events_path.empty()) {
        std::ofstream out(events_path);
        log.write(out, s.clock_step);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}'", events_path));
        }
    }
    const metrics::MetricsReport r = metrics::compute_report(log);
    fmt::print("protocol={} seed={}\n", to_string(s.protocol), s.seed);
    fmt::print("created={} delivered={} relayed={}\n", r.created, r.delivered, r.relayed);
    fmt::print("delivery_ratio={:.6f} avg_hop_count={:.6f} avg_hop_per_delivered={} overhead_ratio={} "
               "observed_max_hop={}\n",
               r.delivery_ratio, r.avg_hop_count, opt(r.avg_hop_per_delivered), opt(r.overhead_ratio),
               r.observed_max_hop);
    return 0;
}

std::vector<double> expand_range(const std::string& spec) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || hi < lo) {
        throw ConfigError(fmt::format("bad range '{}', expected LO:HI:STEP", spec));
    }
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        out.push_back(lo + static_cast<double>(i) * step);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-stepped DTN simulator with GRONE and baseline routers"};
    app.require_subcommand(1);

    CommonArgs run_common;
    std::string run_protocol;
    std::optional<std::uint64_t> run_seed;
    std::string run_events;
    CLI::App* run_cmd = app.add_subcommand("run", "Run one scenario and print its metrics");
    add_common(run_cmd, run_common);
    run_cmd->add_option("--protocol", run_protocol, "grone, epidemic, spray_and_wait, first_contact, direct_delivery");
    run_cmd->add_option("--seed", run_seed, "Random seed");
    run_cmd->add_option("--events", run_events, "Write the event log to this file");

    CommonArgs sweep_common;
    std::string param;
    std::vector<double> values;
    std::string range;
    std::vector<std::string> protocols{"grone", "epidemic", "spray_and_wait", "first_contact"};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::string out_dir{"results"};
    bool verbose = false;
    unsigned jobs = 1;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep over protocols and seeds");
    add_common(sweep_cmd, sweep_common);
    sweep_cmd
        ->add_option("--param", param,
                     "message_interval (s), buffer_size (MB), node_speed (m/s), radius_R (m), node_count, "
                     "sim_duration (h)")
        ->required();
    auto* values_opt = sweep_cmd->add_option("--values", values, "Sweep values, ascending")->delimiter(',');
    auto* range_opt = sweep_cmd->add_option("--range", range, "Sweep values as LO:HI:STEP");
    values_opt->excludes(range_opt);
    sweep_cmd->add_option("--protocols,--protocol", protocols, "Protocols to run")->delimiter(',');
    sweep_cmd->add_option("--seeds", seeds, "Seed list")->delimiter(',');
    sweep_cmd->add_option("--out", out_dir, "Output directory");
    sweep_cmd->add_flag("--verbose", verbose, "Write one event log per run");
    sweep_cmd->add_option("--jobs,-j", jobs, "Runs executed in parallel")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return cmd_run(run_common, run_protocol, run_seed, run_events);
        }
        SweepSpec spec;
        spec.base = load_base(sweep_common);
        spec.param = parse_swept_parameter(param);
        spec.values = range.empty() ? values : expand_range(range);
        spec.seeds = seeds;
        spec.protocols.clear();
        for (const auto& p : protocols) {
            spec.protocols.push_back(parse_protocol(p));
        }
        if (const char* env = std::getenv("GRONE_OUTPUT_DIR"); env != nullptr && *env != '\0') {
            out_dir = env;
        }
        const SweepResult result = run_sweep(spec, out_dir, jobs, verbose);
        fmt::print("{} runs, {} failed, tables in {}\n", result.runs.size(), result.failures(), out_dir);
        return result.failures() == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
}
