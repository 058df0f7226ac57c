#pragma once

namespace rampflow::road {

// Table II hard limits, shared by every controller.
constexpr double kMaxAccel = 2.6;    // m/s^2
constexpr double kMaxDecel = 4.5;    // m/s^2, magnitude
constexpr double kMinHeadway = 2.5;  // m, smallest allowed ACC distance gap
constexpr double kVehicleLength = 4.0;
constexpr double kGapSafetyMargin = 0.25;  // m, slack on the hard stop-safety guard

struct IdmParams {
    double a_max = kMaxAccel;     // m/s^2
    double b_comf = 2.0;          // comfortable deceleration, m/s^2
    double s0 = 2.5;              // standstill gap, m
    double time_headway = 1.0;    // s
    double delta = 4.0;           // free-road exponent
};

// ACC = linear distance-gap law min'd with an IDM safety envelope.
// The envelope uses a sensor-grade reaction headway and a sharp speed-cap
// exponent, so the commanded distance gap, not an IDM time gap, governs
// normal following at any speed below the limit.
struct AccParams {
    double k_gap = 0.23;    // 1/s^2, gain on (gap - target)
    double k_speed = 0.74;  // 1/s, gain on (v_lead - v)
    IdmParams safety{kMaxAccel, 2.5, 2.5, 0.1, 25.0};
};

struct MobilParams {
    double b_safe = 2.0;             // base bound on imposed follower decel, m/s^2
    double assert_relax = 1.0;       // relaxation factor at assertiveness 1
    double decel_cap = 4.4;          // never relax past this (hard bound is 4.5)
    double politeness = 0.3;
    double advantage_threshold = 0.2;  // m/s^2 net gain needed for a discretionary change
    double min_gap_time = 1.0;         // s, scaled by 1/(1+assertiveness)
    double cooldown = 2.0;             // s between lane changes of one vehicle
};

struct DrivingModels {
    IdmParams human;  // unequipped baseline driver
    AccParams acc;    // every ACC-family controller (D-ACC, fixed, threshold)
    MobilParams mobil;
};

}  // namespace rampflow::road
