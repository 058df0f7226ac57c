#pragma once

#include <cstdint>
#include <span>

#include "rampflow/rng.hpp"

namespace rampflow::dqn {

struct Hyperparams {
    double gamma = 0.95;
    double epsilon0 = 1.0;
    double epsilon_min = 0.001;
    double lambda_decay = 0.9995;
    int batch_size = 32;
    double learning_rate = 0.001;
    int target_sync_episodes = 1000;
    std::size_t replay_capacity = 20000;

    void validate() const;
};

// epsilon = max(epsilon0 * lambda_decay^step, epsilon_min); monotone non-increasing.
double epsilon_schedule(std::uint64_t decision_step, const Hyperparams& hp);

// With probability epsilon a uniform action, otherwise the argmax with ties
// broken toward the lowest index.
int select_action(std::span<const double> q_values, double epsilon, Rng& rng);

// Bellman target: r if done, else r + gamma * max(q_next_target).
double td_target(double r, std::span<const double> q_next_target, bool done, double gamma);

}  // namespace rampflow::dqn
