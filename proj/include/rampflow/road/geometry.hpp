#pragma once

#include <stdexcept>
#include <string>

namespace rampflow::road {

// One instrumented highway segment with a single on-ramp. Main lanes run the
// full segment [0, segment_length]. The ramp approach occupies
// [merge_point - ramp_length, merge_point) on its own lane index and continues
// as the acceleration lane [merge_point, merge_point + accel_lane_length],
// which ends in a hard stop. Lane indices grow to the right: 0 is the leftmost
// main lane, main_lane_count-1 the rightmost, main_lane_count the ramp/accel lane.
struct RoadGeometry {
    double segment_length = 1500.0;
    int main_lane_count = 2;
    double ramp_length = 360.0;
    double accel_lane_length = 180.0;
    double merge_point = 1000.0;
    double speed_limit_main = 33.33;
    double speed_limit_ramp = 22.22;

    int merge_lane() const { return main_lane_count; }
    int lane_count() const { return main_lane_count + 1; }
    bool is_main_lane(int lane) const { return lane >= 0 && lane < main_lane_count; }
    double merge_end() const { return merge_point + accel_lane_length; }
    double ramp_origin() const { return merge_point - ramp_length; }

    double free_speed(int lane, double x) const {
        if (is_main_lane(lane)) return speed_limit_main;
        return x < merge_point ? speed_limit_ramp : speed_limit_main;
    }

    double lane_entry(int lane) const { return is_main_lane(lane) ? 0.0 : ramp_origin(); }

    void validate() const {
        if (!(segment_length > accel_lane_length && accel_lane_length > 0))
            throw std::invalid_argument("geometry: need segment_length > accel_lane_length > 0");
        if (!(ramp_length > 0)) throw std::invalid_argument("geometry: ramp_length must be > 0");
        if (main_lane_count < 1) throw std::invalid_argument("geometry: main_lane_count must be >= 1");
        if (merge_point + accel_lane_length > segment_length)
            throw std::invalid_argument("geometry: acceleration lane must end within the segment");
        if (merge_point - ramp_length < 0)
            throw std::invalid_argument("geometry: ramp start lies before the segment");
        if (!(speed_limit_main > 0 && speed_limit_ramp > 0))
            throw std::invalid_argument("geometry: speed limits must be > 0");
    }
};

}  // namespace rampflow::road
