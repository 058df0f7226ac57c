#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rampflow/baselines/baselines.hpp"
#include "rampflow/dqn/policy.hpp"
#include "rampflow/mdp/mdp.hpp"
#include "rampflow/metrics/fuel.hpp"
#include "rampflow/road/geometry.hpp"
#include "rampflow/road/params.hpp"
#include "rampflow/v2x/bulletin.hpp"

namespace rampflow::config {

// Full scenario specification. Every field has a default; a config file only
// overrides what it names. Values outside the studied parameter ranges warn
// but do not fail.
struct RunConfig {
    road::RoadGeometry geometry;
    road::DrivingModels models;
    metrics::FuelParams fuel;

    struct Traffic {
        double main_rate = 2600.0;
        double ramp_rate = 900.0;
        double penetration = 0.5;
        double assertiveness = 0.5;
    } traffic;

    struct ControllerCfg {
        std::string type = "dacc";  // dacc | fixed | threshold | human
        std::string model_path;
        double fixed_headway = 10.0;
        baselines::ThresholdAccConfig threshold;
    } controller;

    struct MdpCfg {
        double action_min = 2.5;
        double action_max = 40.0;
        int action_count = 16;
        double jam_density = 150.0;
        mdp::RewardConfig reward;  // segment_length resolved from geometry unless set
    } mdp;

    dqn::Hyperparams dqn;

    struct Run {
        double horizon = 600.0;
        double dt = 0.1;
        double action_interval = 1.0;
        int episodes = 1000;
        int eval_seeds = 5;
        std::uint64_t seed = 42;
    } run;

    v2x::RsuConfig rsu;  // position resolved to merge_point unless set

    mdp::ActionSet action_set() const;
    mdp::Normalization normalization() const;

    // Parses over defaults, resolves derived fields, hard-validates invariants.
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load(const std::string& path);

    nlohmann::json to_json() const;  // fully resolved echo

    std::vector<std::string> range_warnings() const;
    void validate() const;  // throws std::invalid_argument on hard violations
};

}  // namespace rampflow::config
