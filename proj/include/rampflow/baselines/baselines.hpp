#pragma once

#include <optional>

#include "rampflow/v2x/bulletin.hpp"

namespace rampflow::baselines {

// Flow-threshold comparator: small gaps while measured main flow is heavy,
// wide gaps otherwise. Stand-in for the throughput-seeking real-time ACC
// family; qualitative behavior only.
struct ThresholdAccConfig {
    double flow_threshold = 1800.0;  // veh/h
    double h_low = 5.0;              // m
    double h_high = 15.0;            // m

    void validate() const;  // throws std::invalid_argument
};

// Fixed-headway policy value; h < 2.5 m is a config error.
double validated_fixed_headway(double h);

// q = k * v per lane, converted to veh/h and summed over lanes.
double main_flow_veh_per_hour(const v2x::TrafficBulletin& b, int lane_count);

// h_low if measured flow >= threshold, else h_high; no bulletin -> h_high.
double threshold_acc_headway(const std::optional<v2x::TrafficBulletin>& bulletin,
                             const ThresholdAccConfig& cfg, int lane_count);

}  // namespace rampflow::baselines
