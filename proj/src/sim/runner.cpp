#include "rampflow/sim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rampflow/v2x/v2x.hpp"

namespace rampflow::sim {

Policy Policy::greedy(const dqn::QFunction& q) {
    Policy p;
    p.kind = Kind::kDaccGreedy;
    p.q = &q;
    return p;
}

Policy Policy::fixed_action_index(int index) {
    Policy p;
    p.kind = Kind::kDaccFixedAction;
    p.fixed_action = index;
    return p;
}

Policy Policy::training(const dqn::TrainHooks& hooks) {
    Policy p;
    p.kind = Kind::kDaccTrain;
    p.hooks = &hooks;
    return p;
}

Policy Policy::fixed(double headway) {
    Policy p;
    p.kind = Kind::kFixed;
    p.fixed_headway = baselines::validated_fixed_headway(headway);
    return p;
}

Policy Policy::threshold_acc(const baselines::ThresholdAccConfig& cfg) {
    Policy p;
    p.kind = Kind::kThreshold;
    p.threshold = cfg;
    p.threshold.validate();
    return p;
}

Policy Policy::human() { return Policy{}; }

road::Controller Policy::equipped_controller() const {
    switch (kind) {
        case Kind::kDaccGreedy:
        case Kind::kDaccFixedAction:
        case Kind::kDaccTrain:
            return road::Controller::kDacc;
        case Kind::kFixed:
            return road::Controller::kFixed;
        case Kind::kThreshold:
            return road::Controller::kThreshold;
        case Kind::kHuman:
            return road::Controller::kHuman;
    }
    return road::Controller::kHuman;
}

namespace {

struct PendingDecision {
    mdp::StateVec s;
    int a = 0;
};

}  // namespace

ScenarioResult run_scenario(const config::RunConfig& cfg, const Policy& policy,
                            std::uint64_t seed, const RunOptions& options) {
    const auto actions = cfg.action_set();
    const auto norm = cfg.normalization();
    const auto& reward_cfg = cfg.mdp.reward;

    road::TrafficDemand demand;
    demand.main_rate = cfg.traffic.main_rate;
    demand.ramp_rate = cfg.traffic.ramp_rate;
    demand.penetration = policy.kind == Policy::Kind::kHuman ? 0.0 : cfg.traffic.penetration;
    demand.assertiveness = cfg.traffic.assertiveness;
    demand.equipped_controller = policy.equipped_controller();

    road::WorldState world(cfg.geometry, cfg.models, demand, cfg.fuel, seed);
    world.set_spawn_hook([&](road::Vehicle& v) {
        switch (v.controller) {
            case road::Controller::kFixed:
                v.headway_target = policy.fixed_headway;
                break;
            case road::Controller::kThreshold:
                v.headway_target = policy.threshold.h_high;
                break;
            case road::Controller::kDacc:
                v.headway_target = mdp::kFallbackHeadway;
                break;
            case road::Controller::kHuman:
                break;
        }
    });

    const int substeps = static_cast<int>(std::lround(cfg.run.action_interval / cfg.run.dt));
    const int n_intervals = static_cast<int>(std::lround(cfg.run.horizon / cfg.run.action_interval));
    const int broadcast_every =
        std::max(1, static_cast<int>(std::lround(cfg.rsu.broadcast_period / cfg.run.action_interval)));

    ScenarioResult result;
    if (options.collect_grid) {
        result.grid.emplace(cfg.geometry.segment_length, cfg.run.horizon);
    }

    metrics::SpeedSampler speeds;
    std::map<std::uint64_t, PendingDecision> pending;
    double reward_sum = 0.0;
    std::uint64_t reward_n = 0;

    for (int k = 0; k <= n_intervals; ++k) {
        const double t = world.clock();

        if (k % broadcast_every == 0) {
            const auto bulletin = v2x::aggregate(world, reward_cfg.congestion_speed);
            v2x::deliver(bulletin, world, cfg.rsu);
        }

        if (k > 0) {
            const double delay = metrics::reward_delay(world, reward_cfg.delay_window);
            const int r = mdp::reward(delay, reward_cfg);
            reward_sum += r;
            ++reward_n;

            const bool done = k == n_intervals;
            for (const auto& [id, decision] : pending) {
                road::Vehicle* v = world.find_vehicle(id);
                if (v == nullptr || !v->bulletin.has_value()) continue;  // exited mid-interval
                mdp::Transition tr;
                tr.s = decision.s;
                tr.a = decision.a;
                tr.r = r;
                tr.s_next = mdp::featurize(*v->bulletin, norm);
                tr.done = done;
                ++result.stats.transitions;
                if (options.collect_transitions) result.trajectory.push_back(tr);
                if (policy.kind == Policy::Kind::kDaccTrain) {
                    dqn::Experience e;
                    e.s.assign(tr.s.begin(), tr.s.end());
                    e.a = tr.a;
                    e.r = tr.r;
                    e.s_next.assign(tr.s_next.begin(), tr.s_next.end());
                    e.done = tr.done;
                    policy.hooks->on_transition(std::move(e));
                }
            }
            pending.clear();
        }

        if (k == n_intervals) break;

        bool decided = false;
        for (road::Vehicle* v : world.vehicles()) {
            if (!v->equipped()) continue;
            switch (policy.kind) {
                case Policy::Kind::kFixed:
                    v->headway_target = policy.fixed_headway;
                    break;
                case Policy::Kind::kThreshold:
                    v->headway_target = baselines::threshold_acc_headway(
                        v->bulletin, policy.threshold, cfg.geometry.main_lane_count);
                    break;
                case Policy::Kind::kDaccGreedy:
                case Policy::Kind::kDaccFixedAction:
                case Policy::Kind::kDaccTrain: {
                    if (!v->bulletin.has_value()) {
                        v->headway_target = mdp::kFallbackHeadway;
                        break;
                    }
                    const mdp::StateVec s = mdp::featurize(*v->bulletin, norm);
                    int a = policy.fixed_action;
                    if (policy.kind == Policy::Kind::kDaccGreedy) {
                        const auto q_values = policy.q->forward_values(s);
                        a = static_cast<int>(
                            std::max_element(q_values.begin(), q_values.end()) - q_values.begin());
                    } else if (policy.kind == Policy::Kind::kDaccTrain) {
                        a = policy.hooks->select(s);
                    }
                    mdp::apply_action(*v, a, actions);
                    pending[v->id] = {s, a};
                    ++result.stats.decisions;
                    decided = true;
                    break;
                }
                case Policy::Kind::kHuman:
                    break;
            }
        }
        if (policy.kind == Policy::Kind::kDaccTrain && decided) policy.hooks->on_interval();

        for (int s = 0; s < substeps; ++s) {
            world.step(cfg.run.dt);
            if (result.grid.has_value()) {
                for (const auto& lane : world.lanes())
                    for (const auto& v : lane) result.grid->add(world.clock(), v.position, v.speed);
            }
        }
        speeds.sample(world);
    }

    result.stats.mean_reward =
        reward_n > 0 ? reward_sum / static_cast<double>(reward_n) : 0.0;
    result.report = metrics::build_report(world, speeds, cfg.run.horizon, result.stats.mean_reward);
    return result;
}

dqn::EpisodeRunner make_episode_runner(const config::RunConfig& cfg) {
    return [cfg](const dqn::TrainHooks& hooks, std::uint64_t episode_seed) {
        const Policy policy = Policy::training(hooks);
        return run_scenario(cfg, policy, episode_seed).stats;
    };
}

}  // namespace rampflow::sim
