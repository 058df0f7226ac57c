#pragma once

#include "rampflow/road/car_following.hpp"
#include "rampflow/road/params.hpp"

namespace rampflow::road {

enum class LaneChange { kStay, kLeft, kRight };

// Neighbors on a candidate target lane, seen from the changing vehicle.
// Gaps are bumper-to-bumper; kNoLeader means the slot is empty.
struct NeighborView {
    double lead_gap = kNoLeader;
    double lead_speed = 0.0;
    double follow_gap = kNoLeader;
    double follow_speed = 0.0;
    IdmParams follower_safety;       // the follower's own car-following params
    double follower_free_speed = 0.0;
};

struct ChangeContext {
    double speed = 0.0;
    double assertiveness = 0.5;  // [0,1]
    double urgency = 0.0;        // [0,1], mandatory-merge pressure
    bool mandatory = false;
    double own_free_speed = 0.0;
    IdmParams own_safety;  // own response model toward the new leader
    double reaction = 0.1;  // s, horizon for the hard stop-safety guard
};

// MOBIL-style gap acceptance. Higher assertiveness (and, for mandatory
// merges, higher urgency) accepts smaller gaps and harder imposed follower
// deceleration, but never past the hard braking bound.
bool change_acceptable(const NeighborView& n, const ChangeContext& c, const MobilParams& m);

// Discretionary incentive: net advantage of the candidate lane over staying,
// follower losses weighted by politeness. Accepts when > advantage threshold.
bool change_worthwhile(double accel_now, double accel_after, double follower_accel_before,
                       double follower_accel_after, double threshold, const MobilParams& m);

}  // namespace rampflow::road
