#pragma once

#include <limits>

#include "rampflow/road/params.hpp"

namespace rampflow::road {

constexpr double kNoLeader = std::numeric_limits<double>::infinity();

// IDM acceleration, clamped to [-kMaxDecel, kMaxAccel]. Pass gap = kNoLeader
// for a free road (interaction term drops out). A non-positive gap with a
// leader present returns the emergency value -kMaxDecel.
double car_following_accel(double v, double v_lead, double gap, double free_speed,
                           const IdmParams& p);

// ACC distance-gap law: min of the IDM safety envelope and the linear
// controller k_gap*(gap - target) + k_speed*(v_lead - v), clamped to the same
// bounds. The min guarantees the ACC law never overrides collision avoidance.
double acc_gap_control(double gap, double headway_target, double v, double v_lead,
                       double free_speed, const AccParams& p);

// Largest speed from which a follower can still come to a stop behind its
// (worst-case braking) leader, given one step of reaction lag. Follower and
// leader both brake at max_decel.
double krauss_safe_speed(double gap, double v_lead, double max_decel, double reaction);

}  // namespace rampflow::road
