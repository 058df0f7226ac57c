#include "rampflow/road/lane_change.hpp"

#include <algorithm>

namespace rampflow::road {

namespace {
double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

bool change_acceptable(const NeighborView& n, const ChangeContext& c, const MobilParams& m) {
    const double assert_eff =
        c.mandatory ? clamp01(c.assertiveness + c.urgency * (1.0 - c.assertiveness))
                    : clamp01(c.assertiveness);
    const double decel_bound =
        std::min(m.decel_cap, m.b_safe * (1.0 + m.assert_relax * assert_eff));
    const double gap_scale = 1.0 / (1.0 + assert_eff);

    if (n.lead_gap != kNoLeader) {
        const double min_front = (c.own_safety.s0 + m.min_gap_time * c.speed) * gap_scale;
        if (n.lead_gap < min_front) return false;
        const double own_response =
            car_following_accel(c.speed, n.lead_speed, n.lead_gap, c.own_free_speed, c.own_safety);
        if (own_response < -decel_bound) return false;
        if (c.speed > krauss_safe_speed(n.lead_gap - kGapSafetyMargin, n.lead_speed, kMaxDecel, c.reaction))
            return false;
    }

    if (n.follow_gap != kNoLeader) {
        const double min_rear =
            (n.follower_safety.s0 + m.min_gap_time * n.follow_speed) * gap_scale;
        if (n.follow_gap < min_rear) return false;
        if (n.follow_speed - c.speed > 0.5) {
            // comfort criterion only binds while the follower is actually closing;
            // a matched or receding follower needs no braking at all
            const double imposed = car_following_accel(n.follow_speed, c.speed, n.follow_gap,
                                                       n.follower_free_speed, n.follower_safety);
            if (imposed < -decel_bound) return false;
        }
        if (n.follow_speed >
            krauss_safe_speed(n.follow_gap - kGapSafetyMargin, c.speed, kMaxDecel, c.reaction))
            return false;
    }

    return true;
}

bool change_worthwhile(double accel_now, double accel_after, double follower_accel_before,
                       double follower_accel_after, double threshold, const MobilParams& m) {
    const double follower_loss = std::max(0.0, follower_accel_before - follower_accel_after);
    return accel_after - accel_now - m.politeness * follower_loss > threshold;
}

}  // namespace rampflow::road
