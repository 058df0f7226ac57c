#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "rampflow/metrics/fuel.hpp"
#include "rampflow/rng.hpp"
#include "rampflow/road/geometry.hpp"
#include "rampflow/road/params.hpp"
#include "rampflow/road/vehicle.hpp"

namespace rampflow::road {

struct TrafficDemand {
    double main_rate = 2057.0;  // veh/h, total across main lanes
    double ramp_rate = 900.0;   // veh/h
    double penetration = 0.5;   // share of spawns that get the equipped controller
    double assertiveness = 0.5;
    Controller equipped_controller = Controller::kDacc;
};

struct TripRecord {
    std::uint64_t id = 0;
    Controller controller = Controller::kHuman;
    bool from_ramp = false;
    double entry_time = 0.0;  // when the arrival was demanded (includes entry-queue wait)
    double exit_time = 0.0;
    double fuel = 0.0;
};

// The full simulated world: geometry, per-lane vehicle populations (sorted by
// position), arrival queues, and trip/conservation accounting. step() advances
// one fixed substep and is deterministic given the construction seed.
class WorldState {
public:
    WorldState(const RoadGeometry& geometry, const DrivingModels& models,
               const TrafficDemand& demand, const metrics::FuelParams& fuel,
               std::uint64_t seed);

    // accel -> integrate -> lane changes -> removals -> arrivals; clock += dt.
    // Throws std::logic_error on a bumper-overlap invariant violation.
    void step(double dt);

    double clock() const { return clock_; }
    const RoadGeometry& geometry() const { return geometry_; }
    const DrivingModels& models() const { return models_; }
    const std::vector<std::vector<Vehicle>>& lanes() const { return lanes_; }
    const std::vector<TripRecord>& completed_trips() const { return trips_; }

    std::vector<Vehicle*> vehicles();  // ascending (lane, position)
    Vehicle* find_vehicle(std::uint64_t id);

    std::uint64_t spawned() const { return spawned_; }
    std::uint64_t completed() const { return trips_.size(); }
    std::uint64_t queued() const;
    std::uint64_t on_road() const;
    bool conservation_ok() const { return spawned_ == on_road() + completed() + queued(); }

    // Applied to every newly inserted vehicle (controller-specific setup).
    void set_spawn_hook(std::function<void(Vehicle&)> hook) { spawn_hook_ = std::move(hook); }

    // Manual population (tests, scripted scenarios). Inserts sorted; throws on overlap.
    Vehicle& add_vehicle(Vehicle v);

private:
    struct PendingArrival {
        Controller controller;
        double assertiveness;
        double demand_time;
    };

    void compute_accels(double dt);
    void integrate(double dt);
    void apply_lane_changes(double dt);
    void remove_finished();
    void spawn_arrivals(double dt);
    bool try_insert(int lane, PendingArrival& arrival, double dt);
    void check_ordering() const;

    double commanded_accel(const Vehicle& v, double gap, double lead_speed) const;
    bool mandatory_merge(const Vehicle& v, double dt);
    bool discretionary_change(std::size_t lane, std::size_t idx, double dt);
    void move_vehicle(int from_lane, std::size_t idx, int to_lane);

    RoadGeometry geometry_;
    DrivingModels models_;
    TrafficDemand demand_;
    metrics::FuelParams fuel_;

    double clock_ = 0.0;
    std::uint64_t next_id_ = 1;
    std::uint64_t spawned_ = 0;

    std::vector<std::vector<Vehicle>> lanes_;       // [lane] sorted ascending by position
    std::vector<std::deque<PendingArrival>> entry_queues_;
    std::vector<TripRecord> trips_;

    Rng arrivals_rng_;
    Rng lane_rng_;

    std::function<void(Vehicle&)> spawn_hook_;
};

}  // namespace rampflow::road
