#include "rampflow/dqn/trainer.hpp"

#include <stdexcept>

#include "rampflow/log.hpp"

namespace rampflow::dqn {

TrainResult train(QFunction& q, const Hyperparams& hp, const EpisodeRunner& run_episode,
                  int episodes, std::uint64_t master_seed,
                  const std::function<void(int, double)>& on_best_window) {
    hp.validate();
    if (episodes < 1) throw std::invalid_argument("train: episodes >= 1");

    ReplayBuffer buffer(hp.replay_capacity);
    Rng explore(derive_seed(master_seed, "exploration"));
    std::uint64_t steps = 0;

    std::vector<double> q_buf(static_cast<std::size_t>(q.action_count()));
    std::vector<const Experience*> sampled;
    std::vector<BatchItem> batch;

    TrainHooks hooks;
    hooks.select = [&](std::span<const double> s) {
        q.forward(s, q_buf);
        return select_action(q_buf, epsilon_schedule(steps, hp), explore);
    };
    hooks.on_transition = [&](Experience&& e) { buffer.push(std::move(e)); };
    hooks.on_interval = [&] {
        ++steps;
        if (buffer.size() < static_cast<std::size_t>(hp.batch_size)) return;
        buffer.sample(static_cast<std::size_t>(hp.batch_size), explore, sampled);
        batch.clear();
        for (const Experience* e : sampled) {
            q.target_forward(e->s_next, q_buf);
            batch.push_back({std::span<const double>(e->s), e->a,
                             td_target(e->r, q_buf, e->done, hp.gamma)});
        }
        q.apply_batch(batch, hp.learning_rate);
        if (!q.finite()) throw std::runtime_error("train: non-finite weights after update");
    };

    TrainResult result;
    result.curve.reserve(static_cast<std::size_t>(episodes));
    double window_sum = 0.0;
    for (int e = 0; e < episodes; ++e) {
        const EpisodeStats stats = run_episode(hooks, derive_seed(master_seed, "episode", e));
        result.curve.push_back({e + 1, stats.mean_reward, epsilon_schedule(steps, hp)});
        if ((e + 1) % hp.target_sync_episodes == 0) q.sync_target();

        window_sum += stats.mean_reward;
        if (e >= 100) window_sum -= result.curve[static_cast<std::size_t>(e - 100)].mean_reward;
        const int window = std::min(e + 1, 100);
        const double window_mean = window_sum / window;
        if (window == 100 &&
            (result.best_window_end == 0 || window_mean > result.best_window_reward)) {
            result.best_window_end = e + 1;
            result.best_window_reward = window_mean;
            if (on_best_window) on_best_window(e + 1, window_mean);
        }

        if ((e + 1) % 100 == 0) {
            log::info("episode %d/%d  mean_reward=%.3f  eps=%.4f  buffer=%zu", e + 1, episodes,
                      stats.mean_reward, epsilon_schedule(steps, hp), buffer.size());
        }
    }
    result.decision_steps = steps;
    return result;
}

}  // namespace rampflow::dqn
