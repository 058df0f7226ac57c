#pragma once

#include <array>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rampflow/road/vehicle.hpp"
#include "rampflow/v2x/bulletin.hpp"

namespace rampflow::mdp {

// Five features, each clamped to [0,1], in this fixed order: main density,
// ramp density, main avg speed, ramp avg speed, ramp length.
using StateVec = std::array<double, 5>;

struct Normalization {
    double jam_density = 150.0;      // veh/km/lane
    double speed_norm = 33.33;       // m/s, main speed limit
    double ramp_length_norm = 360.0;  // m
};

StateVec featurize(const v2x::TrafficBulletin& b, const Normalization& n);

// Discrete headway targets, ascending, minimum 2.5 m.
struct ActionSet {
    std::vector<double> targets;

    static ActionSet linear_grid(double lo, double hi, int count);
    void validate() const;  // throws std::invalid_argument on violations
    int size() const { return static_cast<int>(targets.size()); }
};

// Sets the vehicle's desired gap; takes effect at the next substep. An
// out-of-range index is a programming error.
void apply_action(road::Vehicle& v, int action_index, const ActionSet& actions);

constexpr double kFallbackHeadway = 10.0;  // m, used before the first bulletin arrives

struct RewardConfig {
    double congestion_speed = 75.0;         // calibration of the Eq-2 delay budget, see config docs
    double segment_length = 1500.0;        // m
    double delay_window = 60.0;            // s, trailing completed-trip window
};

// +1 iff avg_delay <= segment_length / congestion_speed (boundary inclusive).
int reward(double avg_delay, const RewardConfig& cfg);

struct Transition {
    StateVec s{};
    int a = 0;
    int r = 0;  // exactly -1 or +1
    StateVec s_next{};
    bool done = false;
};

nlohmann::json to_json(const Transition& t);
void write_jsonl(const std::vector<Transition>& trajectory, const std::string& path);

}  // namespace rampflow::mdp
