#include "rampflow/metrics/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

namespace rampflow::metrics {

double free_flow_time(const road::RoadGeometry& geo, bool from_ramp) {
    if (!from_ramp) return geo.segment_length / geo.speed_limit_main;
    return geo.ramp_length / geo.speed_limit_ramp +
           (geo.segment_length - geo.merge_point) / geo.speed_limit_main;
}

double free_flow_time_to(const road::RoadGeometry& geo, bool from_ramp, double x) {
    if (!from_ramp) return std::max(0.0, x) / geo.speed_limit_main;
    if (x < geo.merge_point) return (x - geo.ramp_origin()) / geo.speed_limit_ramp;
    return geo.ramp_length / geo.speed_limit_ramp + (x - geo.merge_point) / geo.speed_limit_main;
}

std::optional<double> avg_delay(std::span<const road::TripRecord> trips, double t_begin,
                                double t_end, const road::RoadGeometry& geo) {
    double sum = 0.0;
    std::uint64_t n = 0;
    for (const auto& trip : trips) {
        if (trip.exit_time < t_begin || trip.exit_time > t_end) continue;
        const double delay = (trip.exit_time - trip.entry_time) - free_flow_time(geo, trip.from_ramp);
        sum += std::max(0.0, delay);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

std::optional<double> in_flight_delay(const road::WorldState& world) {
    const auto& geo = world.geometry();
    double sum = 0.0;
    std::uint64_t n = 0;
    for (const auto& lane : world.lanes()) {
        for (const auto& v : lane) {
            const double elapsed = world.clock() - v.entry_time;
            const double expected = free_flow_time_to(geo, v.from_ramp, v.position);
            sum += std::max(0.0, elapsed - expected);
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

double reward_delay(const road::WorldState& world, double window) {
    const auto& geo = world.geometry();
    const double now = world.clock();
    double sum = 0.0;
    std::uint64_t n = 0;
    for (const auto& trip : world.completed_trips()) {
        if (trip.exit_time < now - window || trip.exit_time > now) continue;
        sum += std::max(0.0, (trip.exit_time - trip.entry_time) - free_flow_time(geo, trip.from_ramp));
        ++n;
    }
    for (const auto& lane : world.lanes()) {
        for (const auto& v : lane) {
            const double expected = free_flow_time_to(geo, v.from_ramp, v.position);
            sum += std::max(0.0, (now - v.entry_time) - expected);
            ++n;
        }
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

DistSummary summarize(std::vector<double> samples) {
    DistSummary s;
    if (samples.empty()) return s;
    std::sort(samples.begin(), samples.end());
    double sum = 0.0;
    for (double x : samples) sum += x;
    s.mean = sum / static_cast<double>(samples.size());
    auto pct = [&](double p) {
        const double pos = p * static_cast<double>(samples.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, samples.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return samples[lo] * (1.0 - frac) + samples[hi] * frac;
    };
    s.p50 = pct(0.50);
    s.p95 = pct(0.95);
    s.max = samples.back();
    return s;
}

void SpeedSampler::sample(const road::WorldState& world) {
    for (const auto& lane : world.lanes()) {
        for (const auto& v : lane) {
            sum_ += v.speed;
            ++count_;
            auto& entry = by_controller_[v.controller];
            entry.first += v.speed;
            ++entry.second;
        }
    }
}

std::optional<double> SpeedSampler::mean() const {
    if (count_ == 0) return std::nullopt;
    return sum_ / static_cast<double>(count_);
}

std::optional<double> SpeedSampler::mean_for(road::Controller c) const {
    auto it = by_controller_.find(c);
    if (it == by_controller_.end() || it->second.second == 0) return std::nullopt;
    return it->second.first / static_cast<double>(it->second.second);
}

SpaceTimeGrid::SpaceTimeGrid(double segment_length, double horizon, double cell_x, double cell_t)
    : cell_x_(cell_x),
      cell_t_(cell_t),
      rows_(static_cast<std::size_t>(std::ceil(segment_length / cell_x))),
      cols_(static_cast<std::size_t>(std::ceil(horizon / cell_t))),
      sum_(rows_ * cols_, 0.0),
      count_(rows_ * cols_, 0) {}

std::size_t SpaceTimeGrid::cell_row(double x) const {
    const auto r = static_cast<std::size_t>(std::max(0.0, x) / cell_x_);
    return std::min(r, rows_ - 1);
}

std::size_t SpaceTimeGrid::cell_col(double t) const {
    const auto c = static_cast<std::size_t>(std::max(0.0, t) / cell_t_);
    return std::min(c, cols_ - 1);
}

void SpaceTimeGrid::add(double t, double x, double v) {
    const std::size_t i = cell_row(x) * cols_ + cell_col(t);
    sum_[i] += v;
    ++count_[i];
}

bool SpaceTimeGrid::occupied(std::size_t row, std::size_t col) const {
    return count_[row * cols_ + col] > 0;
}

double SpaceTimeGrid::mean(std::size_t row, std::size_t col) const {
    const std::size_t i = row * cols_ + col;
    return sum_[i] / static_cast<double>(count_[i]);
}

void SpaceTimeGrid::write_csv(std::ostream& out) const {
    out << "x_m";
    for (std::size_t c = 0; c < cols_; ++c) out << ',' << (static_cast<double>(c) * cell_t_);
    out << '\n';
    for (std::size_t r = 0; r < rows_; ++r) {
        out << (static_cast<double>(r) * cell_x_);
        for (std::size_t c = 0; c < cols_; ++c) {
            out << ',';
            if (occupied(r, c)) out << mean(r, c);
        }
        out << '\n';
    }
}

RunReport build_report(const road::WorldState& world, const SpeedSampler& speeds, double horizon,
                       double mean_reward) {
    RunReport r;
    r.avg_speed = speeds.mean().value_or(0.0);
    r.avg_delay = avg_delay(world.completed_trips(), 0.0, horizon, world.geometry());
    r.spawned = world.spawned();
    r.completed = world.completed();
    r.queued = world.queued();
    r.on_road = world.on_road();
    r.mean_reward = mean_reward;

    double fuel_sum = 0.0;
    for (const auto& trip : world.completed_trips()) {
        fuel_sum += trip.fuel;
        auto& g = r.by_controller[trip.controller];
        ++g.trips;
        g.avg_fuel += trip.fuel;
        const double delay = std::max(
            0.0, (trip.exit_time - trip.entry_time) - free_flow_time(world.geometry(), trip.from_ramp));
        g.avg_delay += delay;
    }
    r.avg_fuel = r.completed > 0 ? fuel_sum / static_cast<double>(r.completed) : 0.0;
    for (auto& [controller, g] : r.by_controller) {
        if (g.trips > 0) {
            g.avg_fuel /= static_cast<double>(g.trips);
            g.avg_delay /= static_cast<double>(g.trips);
        }
        g.avg_speed = speeds.mean_for(controller);
    }
    return r;
}

nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j{{"avg_speed", r.avg_speed},
                     {"avg_fuel", r.avg_fuel},
                     {"spawned", r.spawned},
                     {"completed", r.completed},
                     {"queued", r.queued},
                     {"on_road", r.on_road},
                     {"mean_reward", r.mean_reward}};
    if (r.avg_delay) j["avg_delay"] = *r.avg_delay;
    nlohmann::json groups = nlohmann::json::object();
    for (const auto& [controller, g] : r.by_controller) {
        nlohmann::json jg{{"trips", g.trips}, {"avg_delay", g.avg_delay}, {"avg_fuel", g.avg_fuel}};
        if (g.avg_speed) jg["avg_speed"] = *g.avg_speed;
        groups[road::controller_name(controller)] = std::move(jg);
    }
    j["by_controller"] = std::move(groups);
    return j;
}

DistSummary decision_latency(const std::function<void()>& decide_once, int n_trials,
                             std::vector<double>* per_trial_ms) {
    using clock = std::chrono::steady_clock;
    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(n_trials));
    for (int i = 0; i < n_trials; ++i) {
        const auto t0 = clock::now();
        decide_once();
        const auto t1 = clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    if (per_trial_ms != nullptr) *per_trial_ms = ms;
    return summarize(std::move(ms));
}

}  // namespace rampflow::metrics
