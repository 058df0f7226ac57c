#include "rampflow/dqn/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rampflow::dqn {

void Hyperparams::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("hyperparams: gamma in (0,1]");
    if (!(epsilon_min <= epsilon0)) throw std::invalid_argument("hyperparams: epsilon_min <= epsilon0");
    if (!(lambda_decay > 0.0 && lambda_decay < 1.0) && lambda_decay != 1.0)
        throw std::invalid_argument("hyperparams: lambda_decay in (0,1]");
    if (batch_size < 1) throw std::invalid_argument("hyperparams: batch_size >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("hyperparams: learning_rate > 0");
    if (target_sync_episodes < 1) throw std::invalid_argument("hyperparams: target sync >= 1");
}

double epsilon_schedule(std::uint64_t decision_step, const Hyperparams& hp) {
    const double eps = hp.epsilon0 * std::pow(hp.lambda_decay, static_cast<double>(decision_step));
    return std::max(eps, hp.epsilon_min);
}

int select_action(std::span<const double> q_values, double epsilon, Rng& rng) {
    const int k = static_cast<int>(q_values.size());
    if (epsilon > 0.0 && rng.uniform01() < epsilon) return rng.uniform_int(k);
    return static_cast<int>(std::max_element(q_values.begin(), q_values.end()) - q_values.begin());
}

double td_target(double r, std::span<const double> q_next_target, bool done, double gamma) {
    if (done) return r;
    return r + gamma * *std::max_element(q_next_target.begin(), q_next_target.end());
}

}  // namespace rampflow::dqn
