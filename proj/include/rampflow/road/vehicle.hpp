#pragma once

#include <cstdint>
#include <optional>

#include "rampflow/road/params.hpp"
#include "rampflow/v2x/bulletin.hpp"

namespace rampflow::road {

enum class Controller { kHuman, kDacc, kFixed, kThreshold };

const char* controller_name(Controller c);

struct Vehicle {
    std::uint64_t id = 0;
    int lane = 0;
    double position = 0.0;  // front bumper, m along the segment
    double speed = 0.0;     // m/s
    double accel = 0.0;     // last applied, m/s^2
    double length = kVehicleLength;
    double headway_target = 10.0;  // current ACC desired distance gap, m
    Controller controller = Controller::kHuman;
    double entry_time = 0.0;
    double assertiveness = 0.5;
    bool from_ramp = false;

    double fuel_used = 0.0;            // proxy units accumulated so far
    double last_lane_change = -1e9;    // s
    std::optional<v2x::TrafficBulletin> bulletin;  // last received broadcast

    std::optional<double> accel_override;  // test hook: forces the commanded accel

    double rear() const { return position - length; }
    bool equipped() const { return controller != Controller::kHuman; }
    bool connected() const {
        return controller == Controller::kDacc || controller == Controller::kThreshold;
    }
};

inline const char* controller_name(Controller c) {
    switch (c) {
        case Controller::kHuman: return "human";
        case Controller::kDacc: return "dacc";
        case Controller::kFixed: return "fixed";
        case Controller::kThreshold: return "threshold";
    }
    return "?";
}

}  // namespace rampflow::road
