#pragma once

namespace rampflow::v2x {

// The five traffic quantities a RSU broadcasts, plus the constants vehicles
// need to evaluate the segment (lengths, congestion speed) and a timestamp.
struct TrafficBulletin {
    double main_density = 0.0;    // veh/km/lane
    double main_avg_speed = 0.0;  // m/s
    double ramp_density = 0.0;    // veh/km/lane
    double ramp_avg_speed = 0.0;  // m/s
    double ramp_length = 0.0;     // m
    double segment_length = 0.0;  // m
    double congestion_speed = 0.0;  // m/s
    double timestamp = 0.0;         // s
};

struct RsuConfig {
    double position = 1000.0;       // m along the segment
    double range = 500.0;           // m
    double broadcast_period = 1.0;  // s
};

}  // namespace rampflow::v2x
