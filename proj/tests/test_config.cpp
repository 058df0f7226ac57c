#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "rampflow/config/config.hpp"

using namespace rampflow;
using namespace rampflow::config;

TEST_SUITE("config") {

TEST_CASE("defaults parse, validate, and resolve derived fields") {
    const auto cfg = RunConfig::from_json(nlohmann::json::object());
    CHECK(cfg.traffic.main_rate == doctest::Approx(2600.0));
    CHECK(cfg.traffic.ramp_rate == doctest::Approx(900.0));
    CHECK(cfg.mdp.reward.segment_length == doctest::Approx(cfg.geometry.segment_length));
    CHECK(cfg.rsu.position == doctest::Approx(cfg.geometry.merge_point));
    CHECK(cfg.range_warnings().empty());
    CHECK(cfg.action_set().size() == 16);
    CHECK(cfg.normalization().speed_norm == doctest::Approx(33.33));
}

TEST_CASE("out-of-range study parameters warn but do not fail") {
    nlohmann::json j;
    j["traffic"]["main_rate"] = 5000.0;  // above the studied 3700
    j["geometry"]["accel_lane_length"] = 30.0;
    const auto cfg = RunConfig::from_json(j);
    const auto warnings = cfg.range_warnings();
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("main_rate") != std::string::npos);
    CHECK(warnings[1].find("accel_lane_length") != std::string::npos);
}

TEST_CASE("hard invariants are rejected at load time") {
    nlohmann::json j;
    j["controller"]["fixed_headway"] = 2.4;
    CHECK_THROWS_AS(RunConfig::from_json(j), std::invalid_argument);

    nlohmann::json j2;
    j2["mdp"]["action_min"] = 1.0;
    CHECK_THROWS_AS(RunConfig::from_json(j2), std::invalid_argument);

    nlohmann::json j3;
    j3["controller"]["type"] = "magic";
    CHECK_THROWS_AS(RunConfig::from_json(j3), std::invalid_argument);

    nlohmann::json j4;
    j4["geometry"]["merge_point"] = 1400.0;  // accel lane would overrun the segment
    CHECK_THROWS_AS(RunConfig::from_json(j4), std::invalid_argument);
}

TEST_CASE("config files that are not json are refused") {
    const std::string path = "test_config_bad.json";
    std::ofstream(path) << "not json {";
    CHECK_THROWS_AS(RunConfig::load(path), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("resolved echo round-trips through from_json") {
    nlohmann::json j;
    j["traffic"]["penetration"] = 0.6;
    j["run"]["seed"] = 777;
    j["controller"]["type"] = "threshold";
    const auto cfg = RunConfig::from_json(j);
    const auto echo = cfg.to_json();
    const auto cfg2 = RunConfig::from_json(echo);
    CHECK(cfg2.traffic.penetration == cfg.traffic.penetration);
    CHECK(cfg2.run.seed == cfg.run.seed);
    CHECK(cfg2.controller.type == cfg.controller.type);
    CHECK(cfg2.geometry.segment_length == cfg.geometry.segment_length);
    CHECK(cfg2.dqn.lambda_decay == cfg.dqn.lambda_decay);
}

}  // TEST_SUITE
