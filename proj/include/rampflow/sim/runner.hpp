#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rampflow/baselines/baselines.hpp"
#include "rampflow/config/config.hpp"
#include "rampflow/dqn/trainer.hpp"
#include "rampflow/mdp/mdp.hpp"
#include "rampflow/metrics/metrics.hpp"

namespace rampflow::sim {

// What the equipped vehicles do each action interval.
struct Policy {
    enum class Kind { kDaccGreedy, kDaccFixedAction, kDaccTrain, kFixed, kThreshold, kHuman };

    Kind kind = Kind::kHuman;
    const dqn::QFunction* q = nullptr;
    int fixed_action = 0;
    const dqn::TrainHooks* hooks = nullptr;
    double fixed_headway = 10.0;
    baselines::ThresholdAccConfig threshold;

    static Policy greedy(const dqn::QFunction& q);
    static Policy fixed_action_index(int index);
    static Policy training(const dqn::TrainHooks& hooks);
    static Policy fixed(double headway);
    static Policy threshold_acc(const baselines::ThresholdAccConfig& cfg);
    static Policy human();

    road::Controller equipped_controller() const;
};

struct RunOptions {
    bool collect_transitions = false;
    bool collect_grid = false;
};

struct ScenarioResult {
    metrics::RunReport report;
    dqn::EpisodeStats stats;
    std::vector<mdp::Transition> trajectory;
    std::optional<metrics::SpaceTimeGrid> grid;
};

// One seeded run of the configured scenario under the given policy:
// broadcast -> reward & transition bookkeeping -> per-vehicle decisions ->
// substeps, repeated to the horizon. Deterministic given (config, seed).
ScenarioResult run_scenario(const config::RunConfig& cfg, const Policy& policy,
                            std::uint64_t seed, const RunOptions& options = {});

// Episode adapter for dqn::train on this scenario.
dqn::EpisodeRunner make_episode_runner(const config::RunConfig& cfg);

}  // namespace rampflow::sim
