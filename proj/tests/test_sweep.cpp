#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtnsim/sweep.hpp"

using namespace dtnsim;

namespace {

Scenario tiny() {
    Scenario s = desk_scenario();
    s.node_count = 12;
    s.sim_duration = 300.0;
    return s;
}

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("interval sweep over five seeds has 25 runs and 5 rows") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::message_interval;
    spec.values = {20, 30, 40, 50, 60};
    const SweepResult r = execute_sweep(spec, {.jobs = 2, .event_dir = std::nullopt});
    CHECK(r.runs.size() == 25);
    CHECK(r.failures() == 0);
    CHECK(aggregate_rows(r).size() == 5);
    CHECK(line_count(runs_csv(r)) == 26);
    CHECK(line_count(aggregate_csv(r)) == 6);
}

TEST_CASE("range sweep has nine points") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::radius_R;
    for (int r = 20; r <= 180; r += 20) spec.values.push_back(r);
    spec.seeds = {1};
    const SweepResult r = execute_sweep(spec);
    CHECK(aggregate_rows(r).size() == 9);
}

TEST_CASE("single value and seed aggregates with zero deviation") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::node_speed;
    spec.values = {0.5};
    spec.seeds = {3};
    const auto rows = aggregate_rows(execute_sweep(spec));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].report.runs == 1);
    CHECK(rows[0].report.delivery_ratio.stddev == 0.0);
}

TEST_CASE("one aggregated row per protocol and value") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::buffer_size;
    spec.values = {2, 6};
    spec.seeds = {1, 2};
    spec.protocols = {Protocol::grone, Protocol::epidemic, Protocol::direct_delivery};
    const auto rows = aggregate_rows(execute_sweep(spec));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].protocol == Protocol::grone);
    CHECK(rows[0].value == 2.0);
    CHECK(rows[5].protocol == Protocol::direct_delivery);
    CHECK(rows[5].value == 6.0);
}

TEST_CASE("sweep values apply in table units") {
    const Scenario base = desk_scenario();
    CHECK(apply_sweep_value(base, SweptParameter::buffer_size, 2).buffer_size == 2'000'000);
    CHECK(apply_sweep_value(base, SweptParameter::sim_duration, 0.5).sim_duration == 1800.0);
    CHECK(apply_sweep_value(base, SweptParameter::node_count, 60).node_count == 60);
    CHECK(apply_sweep_value(base, SweptParameter::radius_R, 140).radius == 140.0);
    CHECK_THROWS_AS((void)apply_sweep_value(base, SweptParameter::node_count, 2.5), ConfigError);
}

TEST_CASE("SweepSpec validation") {
    SweepSpec spec;
    spec.base = tiny();
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.values = {30, 20};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.values = {20, 20};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.values = {20, 30};
    spec.seeds = {1, 1};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.seeds = {};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.seeds = {1};
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("failed runs are reported and flushed") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::node_count;
    spec.values = {1, 4};
    spec.seeds = {1};
    const auto dir = std::filesystem::temp_directory_path() / "dtnsim_sweep_fail";
    std::filesystem::remove_all(dir);
    const SweepResult r = run_sweep(spec, dir);
    CHECK(r.failures() == 1);
    CHECK(std::filesystem::exists(dir / "failures.txt"));
    CHECK(slurp(dir / "runs.csv").find("grone,1,1,NA") != std::string::npos);
    CHECK(aggregate_rows(r).size() == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("identical specs write byte-identical tables") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::message_interval;
    spec.values = {20, 40};
    spec.seeds = {1, 2};
    spec.protocols = {Protocol::grone, Protocol::spray_and_wait};
    const auto root = std::filesystem::temp_directory_path() / "dtnsim_sweep_det";
    std::filesystem::remove_all(root);
    run_sweep(spec, root / "a", 1, true);
    run_sweep(spec, root / "b", 3, false);
    CHECK(slurp(root / "a" / "runs.csv") == slurp(root / "b" / "runs.csv"));
    CHECK(slurp(root / "a" / "aggregate.csv") == slurp(root / "b" / "aggregate.csv"));
    const auto log_name = event_log_name(Protocol::grone, SweptParameter::message_interval, 20, 1);
    CHECK(std::filesystem::exists(root / "a" / "events" / log_name));
    CHECK_FALSE(std::filesystem::exists(root / "b" / "events"));
    std::filesystem::remove_all(root);
}

TEST_CASE("table headers follow the documented column order") {
    SweepSpec spec;
    spec.base = tiny();
    spec.param = SweptParameter::node_speed;
    spec.values = {0.4};
    spec.seeds = {1};
    const SweepResult r = execute_sweep(spec);
    const std::string runs = runs_csv(r);
    CHECK(runs.substr(0, runs.find('\n')) ==
          "protocol,node_speed,seed,delivery_ratio,avg_hop_count,avg_hop_per_delivered,overhead_ratio,"
          "observed_max_hop,created,relayed,delivered");
    const std::string agg = aggregate_csv(r);
    CHECK(agg.substr(0, agg.find('\n')) ==
          "protocol,node_speed,seeds,delivery_ratio,delivery_ratio_sd,avg_hop_count,avg_hop_count_sd,"
          "avg_hop_per_delivered,avg_hop_per_delivered_sd,overhead_ratio,overhead_ratio_sd,overhead_undefined,"
          "observed_max_hop,created,relayed,delivered");
}
