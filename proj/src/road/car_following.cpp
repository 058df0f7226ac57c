#include "rampflow/road/car_following.hpp"

#include <algorithm>
#include <cmath>

namespace rampflow::road {

namespace {
double clamp_accel(double a) { return std::clamp(a, -kMaxDecel, kMaxAccel); }
}  // namespace

double car_following_accel(double v, double v_lead, double gap, double free_speed,
                           const IdmParams& p) {
    const double free_term = std::pow(v / free_speed, p.delta);
    if (gap == kNoLeader) {
        return clamp_accel(p.a_max * (1.0 - free_term));
    }
    if (gap <= 0.0) return -kMaxDecel;  // imminent collision, never an exception

    const double closing = v - v_lead;
    const double s_star =
        p.s0 + std::max(0.0, v * p.time_headway + v * closing / (2.0 * std::sqrt(p.a_max * p.b_comf)));
    const double interaction = (s_star / gap) * (s_star / gap);
    return clamp_accel(p.a_max * (1.0 - free_term - interaction));
}

double acc_gap_control(double gap, double headway_target, double v, double v_lead,
                       double free_speed, const AccParams& p) {
    const double safety = car_following_accel(v, v_lead, gap, free_speed, p.safety);
    if (gap == kNoLeader) return safety;
    const double linear = p.k_gap * (gap - headway_target) + p.k_speed * (v_lead - v);
    return clamp_accel(std::min(safety, linear));
}

double krauss_safe_speed(double gap, double v_lead, double max_decel, double reaction) {
    if (gap <= 0.0) return 0.0;
    const double bt = max_decel * reaction;
    const double v = -bt + std::sqrt(bt * bt + v_lead * v_lead + 2.0 * max_decel * gap);
    return std::max(0.0, v);
}

}  // namespace rampflow::road
