#include "rampflow/baselines/baselines.hpp"

#include <stdexcept>

#include "rampflow/road/params.hpp"

namespace rampflow::baselines {

void ThresholdAccConfig::validate() const {
    if (h_low < road::kMinHeadway)
        throw std::invalid_argument("threshold acc: h_low below the 2.5 m minimum headway");
    if (!(h_low < h_high)) throw std::invalid_argument("threshold acc: need h_low < h_high");
    if (!(flow_threshold > 0)) throw std::invalid_argument("threshold acc: flow_threshold > 0");
}

double validated_fixed_headway(double h) {
    if (h < road::kMinHeadway)
        throw std::invalid_argument("fixed headway below the 2.5 m minimum");
    return h;
}

double main_flow_veh_per_hour(const v2x::TrafficBulletin& b, int lane_count) {
    // veh/km/lane * m/s * 3.6 = veh/h/lane
    return b.main_density * b.main_avg_speed * 3.6 * lane_count;
}

double threshold_acc_headway(const std::optional<v2x::TrafficBulletin>& bulletin,
                             const ThresholdAccConfig& cfg, int lane_count) {
    if (!bulletin.has_value()) return cfg.h_high;
    return main_flow_veh_per_hour(*bulletin, lane_count) >= cfg.flow_threshold ? cfg.h_low
                                                                               : cfg.h_high;
}

}  // namespace rampflow::baselines
