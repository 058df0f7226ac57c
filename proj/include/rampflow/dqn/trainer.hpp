#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rampflow/dqn/network.hpp"
#include "rampflow/dqn/policy.hpp"
#include "rampflow/dqn/replay.hpp"

namespace rampflow::dqn {

struct EpisodeStats {
    double mean_reward = 0.0;
    std::uint64_t decisions = 0;
    std::uint64_t transitions = 0;
};

// The trainer drives episodes through these callbacks: `select` is the
// epsilon-greedy policy, `on_transition` feeds the replay buffer, and
// `on_interval` marks one decision step (epsilon tick + one SGD update).
struct TrainHooks {
    std::function<int(std::span<const double>)> select;
    std::function<void(Experience&&)> on_transition;
    std::function<void()> on_interval;
};

using EpisodeRunner = std::function<EpisodeStats(const TrainHooks&, std::uint64_t episode_seed)>;

struct CurvePoint {
    int episode = 0;  // 1-based
    double mean_reward = 0.0;
    double epsilon = 0.0;
};

struct TrainResult {
    std::vector<CurvePoint> curve;
    std::uint64_t decision_steps = 0;
    int best_window_end = 0;        // episode ending the best trailing-100 window
    double best_window_reward = 0.0;
};

// Episode loop around any QFunction: run episode with epsilon-greedy
// decisions, push transitions, one uniform minibatch SGD step per decision
// step once the buffer holds a full batch, target sync every
// target_sync_episodes episodes. Throws std::runtime_error if the weights
// stop being finite.
//
// `on_best_window`, when set, fires whenever the trailing 100-episode mean
// reward reaches a new maximum (callers snapshot weights there; with a
// shared segment reward the policy orbit can drift late, so the best
// sustained window, not the last episode, is the policy to keep).
TrainResult train(QFunction& q, const Hyperparams& hp, const EpisodeRunner& run_episode,
                  int episodes, std::uint64_t master_seed,
                  const std::function<void(int, double)>& on_best_window = {});

}  // namespace rampflow::dqn
