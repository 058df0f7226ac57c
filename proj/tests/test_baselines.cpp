#include <doctest.h>

#include <stdexcept>

#include "rampflow/baselines/baselines.hpp"
#include "rampflow/rng.hpp"

using namespace rampflow;
using namespace rampflow::baselines;

namespace {

v2x::TrafficBulletin with_flow(double density, double speed) {
    v2x::TrafficBulletin b;
    b.main_density = density;
    b.main_avg_speed = speed;
    return b;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("fixed headway accepts the 2.5 m minimum and rejects below it") {
    CHECK(validated_fixed_headway(2.5) == 2.5);
    CHECK(validated_fixed_headway(20.0) == 20.0);
    CHECK_THROWS_AS(validated_fixed_headway(2.4), std::invalid_argument);
}

TEST_CASE("q = k * v flow conversion") {
    // 20 veh/km/lane at 25 m/s over 2 lanes -> 3600 veh/h
    CHECK(main_flow_veh_per_hour(with_flow(20.0, 25.0), 2) == doctest::Approx(3600.0));
}

TEST_CASE("threshold policy switches exactly at the boundary") {
    ThresholdAccConfig cfg;  // threshold 1800, h_low 5, h_high 15
    // flow = 10 * 25 * 3.6 * 2 = 1800 exactly
    CHECK(threshold_acc_headway(with_flow(10.0, 25.0), cfg, 2) == cfg.h_low);
    CHECK(threshold_acc_headway(with_flow(9.9, 25.0), cfg, 2) == cfg.h_high);
}

TEST_CASE("zero traffic and missing bulletins are conservative") {
    ThresholdAccConfig cfg;
    CHECK(threshold_acc_headway(with_flow(0.0, 33.33), cfg, 2) == cfg.h_high);
    CHECK(threshold_acc_headway(std::nullopt, cfg, 2) == cfg.h_high);
}

TEST_CASE("threshold output is exactly h_low or h_high over fuzzed bulletins") {
    ThresholdAccConfig cfg;
    Rng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const double h =
            threshold_acc_headway(with_flow(rng.uniform(0.0, 200.0), rng.uniform(0.0, 34.0)), cfg, 2);
        CHECK((h == cfg.h_low || h == cfg.h_high));
    }
}

TEST_CASE("config validation rejects inverted or sub-minimum gaps") {
    ThresholdAccConfig bad;
    bad.h_low = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.h_low = 15.0;
    bad.h_high = 10.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
