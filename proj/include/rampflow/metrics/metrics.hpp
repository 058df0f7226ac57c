#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rampflow/road/geometry.hpp"
#include "rampflow/road/world.hpp"

namespace rampflow::metrics {

// Free-flow travel time for a trip origin: main trips cover the whole segment
// at the main limit; ramp trips cover the ramp at the ramp limit plus the
// remainder of the segment at the main limit.
double free_flow_time(const road::RoadGeometry& geo, bool from_ramp);

// Free-flow time from the origin to position x (in-flight delay estimates).
double free_flow_time_to(const road::RoadGeometry& geo, bool from_ramp, double x);

// Mean over trips completing within [t_begin, t_end] of max(0, travel - free-flow).
std::optional<double> avg_delay(std::span<const road::TripRecord> trips, double t_begin,
                                double t_end, const road::RoadGeometry& geo);

// Delay estimate from vehicles still on the road (reward fallback when the
// completed-trip window is empty).
std::optional<double> in_flight_delay(const road::WorldState& world);

// Segment-state delay estimate feeding the reward: mean per-unit delay over
// trips completed within the trailing window together with the accrued delay
// of every vehicle still on the road. Counting in-flight vehicles removes the
// survivor bias of a completed-trips-only window (stuck vehicles never show
// up there). Empty world -> 0.
double reward_delay(const road::WorldState& world, double window);

struct DistSummary {
    double mean = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
    double max = 0.0;
};

DistSummary summarize(std::vector<double> samples);

// Time-and-vehicle mean of instantaneous speeds, sampled per action interval.
class SpeedSampler {
public:
    void sample(const road::WorldState& world);
    std::optional<double> mean() const;
    std::optional<double> mean_for(road::Controller c) const;

private:
    double sum_ = 0.0;
    std::uint64_t count_ = 0;
    std::map<road::Controller, std::pair<double, std::uint64_t>> by_controller_;
};

struct Sample {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
};

// Mean speed per (10 m x 1 s) cell; empty cells stay marked.
class SpaceTimeGrid {
public:
    SpaceTimeGrid(double segment_length, double horizon, double cell_x = 10.0, double cell_t = 1.0);

    void add(double t, double x, double v);
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool occupied(std::size_t row, std::size_t col) const;
    double mean(std::size_t row, std::size_t col) const;
    std::size_t cell_row(double x) const;
    std::size_t cell_col(double t) const;

    // Header row of time bins, then one row per 10 m slice; empty cells blank.
    void write_csv(std::ostream& out) const;

private:
    double cell_x_, cell_t_;
    std::size_t rows_, cols_;
    std::vector<double> sum_;
    std::vector<std::uint64_t> count_;
};

struct ControllerGroup {
    std::uint64_t trips = 0;
    double avg_delay = 0.0;
    double avg_fuel = 0.0;
    std::optional<double> avg_speed;
};

struct RunReport {
    double avg_speed = 0.0;
    std::optional<double> avg_delay;
    double avg_fuel = 0.0;
    std::uint64_t spawned = 0;
    std::uint64_t completed = 0;
    std::uint64_t queued = 0;
    std::uint64_t on_road = 0;
    double mean_reward = 0.0;
    std::map<road::Controller, ControllerGroup> by_controller;
};

RunReport build_report(const road::WorldState& world, const SpeedSampler& speeds,
                       double horizon, double mean_reward);

nlohmann::json to_json(const RunReport& r);

// Times one full decision (featurize + forward + select) per trial.
DistSummary decision_latency(const std::function<void()>& decide_once, int n_trials,
                             std::vector<double>* per_trial_ms = nullptr);

}  // namespace rampflow::metrics
