#include "rampflow/road/world.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rampflow/road/car_following.hpp"
#include "rampflow/road/lane_change.hpp"

namespace rampflow::road {

namespace {
constexpr double kMinSpawnGap = 3.0;  // m, bumper gap required to insert at the entry

// Cut-in anticipation: a vehicle on the adjacent main lane treats a merger
// edging in ahead as a provisional leader, yielding per its own gap policy.
constexpr double kCutInLookahead = 50.0;   // m
constexpr double kCutInMaxClosing = 8.0;   // m/s, ignore mergers it will simply pass
constexpr double kCourtesyDecel = 2.0;     // m/s^2, yielding is comfort-bounded

// Wariness near an occupied merge: nobody passes a struggling merger at full
// relative speed; ease off (comfort-bounded) to cap the speed difference.
constexpr double kWaryLookahead = 80.0;    // m
constexpr double kWaryPassDelta = 15.0;    // m/s allowed over the merger's speed
constexpr double kWaryRelaxation = 1.0;    // s

// A merger plans for the lane end as a stop it can still make at firm (not
// emergency) braking, instead of car-following against a phantom stopped
// leader; otherwise the end shadows the whole lane and nobody speed-matches.
constexpr double kWallPlanningDecel = 3.5;  // m/s^2

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

WorldState::WorldState(const RoadGeometry& geometry, const DrivingModels& models,
                       const TrafficDemand& demand, const metrics::FuelParams& fuel,
                       std::uint64_t seed)
    : geometry_(geometry),
      models_(models),
      demand_(demand),
      fuel_(fuel),
      lanes_(geometry.lane_count()),
      entry_queues_(geometry.lane_count()),
      arrivals_rng_(derive_seed(seed, "arrivals")),
      lane_rng_(derive_seed(seed, "lane_change")) {
    geometry_.validate();
}

std::uint64_t WorldState::queued() const {
    std::uint64_t n = 0;
    for (const auto& q : entry_queues_) n += q.size();
    return n;
}

std::uint64_t WorldState::on_road() const {
    std::uint64_t n = 0;
    for (const auto& lane : lanes_) n += lane.size();
    return n;
}

std::vector<Vehicle*> WorldState::vehicles() {
    std::vector<Vehicle*> out;
    out.reserve(on_road());
    for (auto& lane : lanes_)
        for (auto& v : lane) out.push_back(&v);
    return out;
}

Vehicle* WorldState::find_vehicle(std::uint64_t id) {
    for (auto& lane : lanes_)
        for (auto& v : lane)
            if (v.id == id) return &v;
    return nullptr;
}

Vehicle& WorldState::add_vehicle(Vehicle v) {
    if (v.lane < 0 || v.lane >= geometry_.lane_count())
        throw std::invalid_argument("add_vehicle: bad lane index");
    auto& lane = lanes_[v.lane];
    auto it = std::upper_bound(lane.begin(), lane.end(), v.position,
                               [](double x, const Vehicle& u) { return x < u.position; });
    if (v.id == 0) v.id = next_id_++;
    ++spawned_;
    it = lane.insert(it, v);
    check_ordering();
    return *it;
}

double WorldState::commanded_accel(const Vehicle& v, double gap, double lead_speed) const {
    const double free = geometry_.free_speed(v.lane, v.position);
    if (v.accel_override) return *v.accel_override;
    if (v.controller == Controller::kHuman)
        return car_following_accel(v.speed, lead_speed, gap, free, models_.human);
    return acc_gap_control(gap, v.headway_target, v.speed, lead_speed, free, models_.acc);
}

void WorldState::compute_accels(double dt) {
    const int merge_lane = geometry_.merge_lane();
    const auto& merge_vec = lanes_[merge_lane];
    for (int l = 0; l < static_cast<int>(lanes_.size()); ++l) {
        auto& lane = lanes_[l];
        const bool beside_merge = l == geometry_.main_lane_count - 1;
        std::size_t mi = 0;
        for (std::size_t i = 0; i < lane.size(); ++i) {
            Vehicle& v = lane[i];
            double gap = kNoLeader;
            double lead_speed = 0.0;
            if (i + 1 < lane.size()) {
                gap = lane[i + 1].rear() - v.position;
                lead_speed = lane[i + 1].speed;
            }
            double a = commanded_accel(v, gap, lead_speed);
            if (gap != kNoLeader) {
                const double v_safe =
                    krauss_safe_speed(gap - kGapSafetyMargin, lead_speed, kMaxDecel, dt);
                a = std::min(a, (v_safe - v.speed) / dt);
            }
            if (l == merge_lane) {
                // lane-end stop envelope: firm planning profile plus the hard guard
                const double wall_gap = geometry_.merge_end() - v.position;
                const double v_plan =
                    krauss_safe_speed(wall_gap - kGapSafetyMargin, 0.0, kWallPlanningDecel, dt);
                const double v_hard =
                    krauss_safe_speed(wall_gap - kGapSafetyMargin, 0.0, kMaxDecel, dt);
                a = std::min(a, (std::min(v_plan, v_hard) - v.speed) / dt);
            }

            if (beside_merge && l != merge_lane && !merge_vec.empty()) {
                while (mi < merge_vec.size() && merge_vec[mi].position <= v.position + 0.5) ++mi;
                if (mi < merge_vec.size()) {
                    const Vehicle& merger = merge_vec[mi];
                    const double ahead_by = merger.position - v.position;
                    const double virtual_gap = merger.rear() - v.position;
                    if (merger.position >= geometry_.merge_point && virtual_gap > 0.25) {
                        if (ahead_by <= kCutInLookahead &&
                            v.speed - merger.speed <= kCutInMaxClosing && virtual_gap < gap) {
                            const double courtesy = commanded_accel(v, virtual_gap, merger.speed);
                            a = std::min(a, std::max(courtesy, -kCourtesyDecel));
                        } else if (ahead_by <= kWaryLookahead) {
                            const double pass_speed = merger.speed + kWaryPassDelta;
                            if (v.speed > pass_speed) {
                                a = std::min(a, std::max((pass_speed - v.speed) / kWaryRelaxation,
                                                         -kCourtesyDecel));
                            }
                        }
                    }
                }
            }

            a = std::clamp(a, -kMaxDecel, kMaxAccel);
            a = std::max(a, -v.speed / dt);  // no reversing
            v.accel = a;
        }
    }
}

void WorldState::integrate(double dt) {
    for (auto& lane : lanes_) {
        for (auto& v : lane) {
            v.fuel_used += metrics::fuel_rate(v.speed, v.accel, fuel_) * dt;
            v.speed = std::max(0.0, v.speed + v.accel * dt);
            v.position += v.speed * dt;
        }
    }
}

namespace {

struct Slot {
    const Vehicle* lead = nullptr;
    const Vehicle* follow = nullptr;
};

// Neighbors a vehicle at `position` would have on `lane`.
Slot find_slot(const std::vector<Vehicle>& lane, double position) {
    Slot s;
    auto it = std::upper_bound(lane.begin(), lane.end(), position,
                               [](double x, const Vehicle& u) { return x < u.position; });
    if (it != lane.end()) s.lead = &*it;
    if (it != lane.begin()) s.follow = &*(it - 1);
    return s;
}

}  // namespace

bool WorldState::mandatory_merge(const Vehicle& v, double dt) {
    if (v.position < geometry_.merge_point) return false;  // still on the ramp approach
    const int target = geometry_.main_lane_count - 1;
    const auto& target_lane = lanes_[target];
    const Slot slot = find_slot(target_lane, v.position);

    NeighborView n;
    if (slot.lead != nullptr) {
        n.lead_gap = slot.lead->rear() - v.position;
        n.lead_speed = slot.lead->speed;
    }
    if (slot.follow != nullptr) {
        n.follow_gap = v.rear() - slot.follow->position;
        n.follow_speed = slot.follow->speed;
        n.follower_safety = slot.follow->equipped() ? models_.acc.safety : models_.human;
        n.follower_free_speed = geometry_.free_speed(target, slot.follow->position);
    }

    ChangeContext c;
    c.speed = v.speed;
    c.assertiveness = v.assertiveness;
    c.urgency = clamp01(1.0 - (geometry_.merge_end() - v.position) / geometry_.accel_lane_length);
    c.mandatory = true;
    c.own_free_speed = geometry_.free_speed(target, v.position);
    c.own_safety = v.equipped() ? models_.acc.safety : models_.human;
    c.reaction = dt;

    return change_acceptable(n, c, models_.mobil);
}

bool WorldState::discretionary_change(std::size_t lane_idx, std::size_t idx, double dt) {
    auto& lane = lanes_[lane_idx];
    Vehicle& v = lane[idx];

    double cur_gap = kNoLeader;
    double cur_lead_speed = 0.0;
    if (idx + 1 < lane.size()) {
        cur_gap = lane[idx + 1].rear() - v.position;
        cur_lead_speed = lane[idx + 1].speed;
    }
    const double accel_now = commanded_accel(v, cur_gap, cur_lead_speed);

    int best_target = -1;
    double best_gain = 0.0;

    for (int target : {static_cast<int>(lane_idx) - 1, static_cast<int>(lane_idx) + 1}) {
        if (target < 0 || target >= geometry_.main_lane_count) continue;

        const Slot slot = find_slot(lanes_[target], v.position);
        NeighborView n;
        if (slot.lead != nullptr) {
            n.lead_gap = slot.lead->rear() - v.position;
            n.lead_speed = slot.lead->speed;
        }
        if (slot.follow != nullptr) {
            n.follow_gap = v.rear() - slot.follow->position;
            n.follow_speed = slot.follow->speed;
            n.follower_safety = slot.follow->equipped() ? models_.acc.safety : models_.human;
            n.follower_free_speed = geometry_.free_speed(target, slot.follow->position);
        }

        ChangeContext c;
        c.speed = v.speed;
        c.assertiveness = v.assertiveness;
        c.mandatory = false;
        c.own_free_speed = geometry_.free_speed(target, v.position);
        c.own_safety = v.equipped() ? models_.acc.safety : models_.human;
        c.reaction = dt;
        if (!change_acceptable(n, c, models_.mobil)) continue;

        const double accel_after = commanded_accel(v, n.lead_gap, n.lead_speed);

        double follower_before = 0.0;
        double follower_after = 0.0;
        if (slot.follow != nullptr) {
            const Vehicle& f = *slot.follow;
            double f_gap_before = kNoLeader;
            double f_lead_speed_before = 0.0;
            if (slot.lead != nullptr) {
                f_gap_before = slot.lead->rear() - f.position;
                f_lead_speed_before = slot.lead->speed;
            }
            follower_before = commanded_accel(f, f_gap_before, f_lead_speed_before);
            follower_after = commanded_accel(f, v.rear() - f.position, v.speed);
        }

        // Small dithered threshold so symmetric situations do not flip-flop in lockstep.
        const double threshold =
            models_.mobil.advantage_threshold + 0.05 * lane_rng_.uniform01();
        if (!change_worthwhile(accel_now, accel_after, follower_before, follower_after, threshold,
                               models_.mobil))
            continue;

        const double gain = accel_after - accel_now;
        if (best_target < 0 || gain > best_gain) {
            best_target = target;
            best_gain = gain;
        }
    }

    if (best_target < 0) return false;
    move_vehicle(static_cast<int>(lane_idx), idx, best_target);
    return true;
}

void WorldState::move_vehicle(int from_lane, std::size_t idx, int to_lane) {
    Vehicle v = lanes_[from_lane][idx];
    lanes_[from_lane].erase(lanes_[from_lane].begin() + static_cast<std::ptrdiff_t>(idx));
    v.lane = to_lane;
    v.last_lane_change = clock_;
    auto& dest = lanes_[to_lane];
    auto it = std::upper_bound(dest.begin(), dest.end(), v.position,
                               [](double x, const Vehicle& u) { return x < u.position; });
    dest.insert(it, v);
}

void WorldState::apply_lane_changes(double dt) {
    struct Candidate {
        int lane;
        double position;
        std::uint64_t id;
    };
    std::vector<Candidate> order;
    order.reserve(on_road());
    for (int l = 0; l < static_cast<int>(lanes_.size()); ++l)
        for (const auto& v : lanes_[l]) order.push_back({l, v.position, v.id});

    for (const auto& cand : order) {
        auto& lane = lanes_[cand.lane];
        auto it = std::lower_bound(lane.begin(), lane.end(), cand.position,
                                   [](const Vehicle& u, double x) { return u.position < x; });
        if (it == lane.end() || it->id != cand.id) continue;  // moved or removed earlier
        const std::size_t idx = static_cast<std::size_t>(it - lane.begin());
        Vehicle& v = *it;

        if (clock_ - v.last_lane_change < models_.mobil.cooldown) continue;

        if (cand.lane == geometry_.merge_lane()) {
            if (mandatory_merge(v, dt)) move_vehicle(cand.lane, idx, geometry_.main_lane_count - 1);
        } else {
            discretionary_change(static_cast<std::size_t>(cand.lane), idx, dt);
        }
    }
}

void WorldState::remove_finished() {
    for (int l = 0; l < geometry_.main_lane_count; ++l) {
        auto& lane = lanes_[l];
        while (!lane.empty() && lane.back().position >= geometry_.segment_length) {
            const Vehicle& v = lane.back();
            trips_.push_back({v.id, v.controller, v.from_ramp, v.entry_time, clock_, v.fuel_used});
            lane.pop_back();
        }
    }
}

void WorldState::spawn_arrivals(double dt) {
    const int right = geometry_.main_lane_count - 1;
    const int merge = geometry_.merge_lane();
    auto draw_arrival = [&] {
        const bool equipped = arrivals_rng_.bernoulli(demand_.penetration);
        return PendingArrival{equipped ? demand_.equipped_controller : Controller::kHuman,
                              demand_.assertiveness, clock_};
    };

    // Main demand enters keeping right and redistributes by overtaking; a
    // blocked right entry spills one lane to the left.
    const double p_main = demand_.main_rate * dt / 3600.0;
    if (p_main > 0.0 && arrivals_rng_.bernoulli(p_main)) {
        ++spawned_;
        entry_queues_[right].push_back(draw_arrival());
    }
    const double p_ramp = demand_.ramp_rate * dt / 3600.0;
    if (p_ramp > 0.0 && arrivals_rng_.bernoulli(p_ramp)) {
        ++spawned_;
        entry_queues_[merge].push_back(draw_arrival());
    }

    if (!entry_queues_[right].empty()) {
        for (int l = right; l >= 0; --l) {
            if (try_insert(l, entry_queues_[right].front(), dt)) {
                entry_queues_[right].pop_front();
                break;
            }
        }
    }
    if (!entry_queues_[merge].empty() && try_insert(merge, entry_queues_[merge].front(), dt)) {
        entry_queues_[merge].pop_front();
    }
}

bool WorldState::try_insert(int lane_idx, PendingArrival& arrival, double dt) {
    auto& lane = lanes_[lane_idx];
    const double entry_x = geometry_.lane_entry(lane_idx);
    double v_entry = geometry_.free_speed(lane_idx, entry_x);
    if (!lane.empty()) {
        const Vehicle& leader = lane.front();
        const double gap = leader.rear() - entry_x;
        if (gap < kMinSpawnGap) return false;
        v_entry = std::min(
            v_entry, krauss_safe_speed(gap - kGapSafetyMargin, leader.speed, kMaxDecel, dt));
    }

    Vehicle v;
    v.id = next_id_++;
    v.lane = lane_idx;
    v.position = entry_x;
    v.speed = v_entry;
    v.controller = arrival.controller;
    v.entry_time = arrival.demand_time;
    v.assertiveness = arrival.assertiveness;
    v.from_ramp = !geometry_.is_main_lane(lane_idx);
    if (spawn_hook_) spawn_hook_(v);
    lane.insert(lane.begin(), v);
    return true;
}

void WorldState::check_ordering() const {
    for (std::size_t l = 0; l < lanes_.size(); ++l) {
        const auto& lane = lanes_[l];
        for (std::size_t i = 0; i + 1 < lane.size(); ++i) {
            const double gap = lane[i + 1].rear() - lane[i].position;
            if (gap <= 0.0) {
                std::ostringstream dump;
                dump << "bumper overlap on lane " << l << " at t=" << clock_ << ": vehicle "
                     << lane[i].id << " (x=" << lane[i].position << ", v=" << lane[i].speed
                     << ") vs " << lane[i + 1].id << " (x=" << lane[i + 1].position
                     << ", v=" << lane[i + 1].speed << "), gap=" << gap;
                throw std::logic_error(dump.str());
            }
        }
    }
}

void WorldState::step(double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    compute_accels(dt);
    integrate(dt);
    clock_ += dt;
    apply_lane_changes(dt);
    remove_finished();
    spawn_arrivals(dt);
    check_ordering();
}

}  // namespace rampflow::road
