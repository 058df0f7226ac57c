#include <doctest.h>

#include <cmath>

#include "rampflow/rng.hpp"
#include "rampflow/road/car_following.hpp"

using namespace rampflow;
using namespace rampflow::road;

TEST_SUITE("car_following") {

TEST_CASE("free road from standstill gives full acceleration") {
    IdmParams p;
    CHECK(car_following_accel(0.0, 0.0, kNoLeader, 33.33, p) == doctest::Approx(2.6));
}

TEST_CASE("free road at the free speed is an equilibrium") {
    IdmParams p;
    CHECK(car_following_accel(33.33, 0.0, kNoLeader, 33.33, p) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("free road at v=20 matches the independent scalar evaluation") {
    IdmParams p;
    // 2.6 * (1 - (20/33.33)^4), evaluated independently
    CHECK(car_following_accel(20.0, 0.0, kNoLeader, 33.33, p) ==
          doctest::Approx(2.2629051822972595).epsilon(1e-9));
}

TEST_CASE("non-positive gap with a leader present is emergency braking, not an exception") {
    IdmParams p;
    CHECK(car_following_accel(10.0, 5.0, 0.0, 33.33, p) == -4.5);
    CHECK(car_following_accel(10.0, 5.0, -1.0, 33.33, p) == -4.5);
}

TEST_CASE("accel is always clamped to [-4.5, 2.6]") {
    IdmParams p;
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double v = rng.uniform(0.0, 40.0);
        const double vl = rng.uniform(0.0, 40.0);
        const double gap = rng.uniform(0.1, 200.0);
        const double a = car_following_accel(v, vl, gap, 33.33, p);
        CHECK(a >= -4.5);
        CHECK(a <= 2.6);
    }
}

TEST_CASE("acc law: both error terms zero gives zero from the linear law") {
    AccParams p;
    CHECK(acc_gap_control(20.0, 20.0, 10.0, 10.0, 33.33, p) == doctest::Approx(0.0));
}

TEST_CASE("acc law: k1 * gap error, gap above and below target") {
    AccParams p;  // k_gap = 0.23
    CHECK(acc_gap_control(30.0, 20.0, 10.0, 10.0, 33.33, p) == doctest::Approx(2.3));
    CHECK(acc_gap_control(10.0, 20.0, 10.0, 10.0, 33.33, p) == doctest::Approx(-2.3));
}

TEST_CASE("acc law never exceeds the safety envelope") {
    AccParams p;
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        const double v = rng.uniform(0.0, 35.0);
        const double vl = rng.uniform(0.0, 35.0);
        const double gap = rng.uniform(0.1, 120.0);
        const double target = rng.uniform(2.5, 40.0);
        const double acc = acc_gap_control(gap, target, v, vl, 33.33, p);
        const double safety = car_following_accel(v, vl, gap, 33.33, p.safety);
        CHECK(acc <= safety + 1e-12);
        CHECK(acc >= -4.5);
        CHECK(acc <= 2.6);
    }
}

TEST_CASE("acc law with no leader reduces to the free-road term") {
    AccParams p;
    CHECK(acc_gap_control(kNoLeader, 10.0, 0.0, 0.0, 33.33, p) == doctest::Approx(2.6));
}

TEST_CASE("krauss safe speed allows a full stop behind a stopping leader") {
    // follower adopting v_safe, both braking at 4.5 after one 0.1 s reaction step
    const double b = 4.5;
    const double dt = 0.1;
    for (double gap : {2.0, 10.0, 40.0, 120.0}) {
        for (double v_lead : {0.0, 10.0, 30.0}) {
            const double v = krauss_safe_speed(gap, v_lead, b, dt);
            const double follower_stop = v * dt + v * v / (2.0 * b);
            const double leader_stop = v_lead * v_lead / (2.0 * b);
            CHECK(follower_stop <= gap + leader_stop + 1e-9);
        }
    }
    CHECK(krauss_safe_speed(0.0, 20.0, b, dt) == 0.0);
}

}  // TEST_SUITE
