#include "rampflow/config/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rampflow::config {

namespace {

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

mdp::ActionSet RunConfig::action_set() const {
    return mdp::ActionSet::linear_grid(mdp.action_min, mdp.action_max, mdp.action_count);
}

mdp::Normalization RunConfig::normalization() const {
    return {mdp.jam_density, geometry.speed_limit_main, geometry.ramp_length};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    bool reward_segment_set = false;
    bool rsu_position_set = false;

    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        get_if(g, "segment_length", c.geometry.segment_length);
        get_if(g, "main_lane_count", c.geometry.main_lane_count);
        get_if(g, "ramp_length", c.geometry.ramp_length);
        get_if(g, "accel_lane_length", c.geometry.accel_lane_length);
        get_if(g, "merge_point", c.geometry.merge_point);
        get_if(g, "speed_limit_main", c.geometry.speed_limit_main);
        get_if(g, "speed_limit_ramp", c.geometry.speed_limit_ramp);
    }
    if (j.contains("traffic")) {
        const auto& t = j.at("traffic");
        get_if(t, "main_rate", c.traffic.main_rate);
        get_if(t, "ramp_rate", c.traffic.ramp_rate);
        get_if(t, "penetration", c.traffic.penetration);
        get_if(t, "assertiveness", c.traffic.assertiveness);
    }
    if (j.contains("controller")) {
        const auto& k = j.at("controller");
        get_if(k, "type", c.controller.type);
        get_if(k, "model_path", c.controller.model_path);
        get_if(k, "fixed_headway", c.controller.fixed_headway);
        if (k.contains("threshold")) {
            const auto& th = k.at("threshold");
            get_if(th, "flow_threshold", c.controller.threshold.flow_threshold);
            get_if(th, "h_low", c.controller.threshold.h_low);
            get_if(th, "h_high", c.controller.threshold.h_high);
        }
    }
    if (j.contains("mdp")) {
        const auto& m = j.at("mdp");
        get_if(m, "action_min", c.mdp.action_min);
        get_if(m, "action_max", c.mdp.action_max);
        get_if(m, "action_count", c.mdp.action_count);
        get_if(m, "jam_density", c.mdp.jam_density);
        if (m.contains("reward")) {
            const auto& r = m.at("reward");
            get_if(r, "congestion_speed", c.mdp.reward.congestion_speed);
            get_if(r, "delay_window", c.mdp.reward.delay_window);
            if (r.contains("segment_length")) {
                c.mdp.reward.segment_length = r.at("segment_length").get<double>();
                reward_segment_set = true;
            }
        }
    }
    if (j.contains("dqn")) {
        const auto& d = j.at("dqn");
        get_if(d, "gamma", c.dqn.gamma);
        get_if(d, "epsilon0", c.dqn.epsilon0);
        get_if(d, "epsilon_min", c.dqn.epsilon_min);
        get_if(d, "lambda_decay", c.dqn.lambda_decay);
        get_if(d, "batch_size", c.dqn.batch_size);
        get_if(d, "learning_rate", c.dqn.learning_rate);
        get_if(d, "target_sync_episodes", c.dqn.target_sync_episodes);
        get_if(d, "replay_capacity", c.dqn.replay_capacity);
    }
    if (j.contains("run")) {
        const auto& r = j.at("run");
        get_if(r, "horizon", c.run.horizon);
        get_if(r, "dt", c.run.dt);
        get_if(r, "action_interval", c.run.action_interval);
        get_if(r, "episodes", c.run.episodes);
        get_if(r, "eval_seeds", c.run.eval_seeds);
        get_if(r, "seed", c.run.seed);
    }
    if (j.contains("v2x")) {
        const auto& v = j.at("v2x");
        if (v.contains("rsu_position")) {
            c.rsu.position = v.at("rsu_position").get<double>();
            rsu_position_set = true;
        }
        get_if(v, "range", c.rsu.range);
        get_if(v, "broadcast_period", c.rsu.broadcast_period);
    }
    if (j.contains("models")) {
        const auto& m = j.at("models");
        if (m.contains("human")) {
            const auto& h = m.at("human");
            get_if(h, "a_max", c.models.human.a_max);
            get_if(h, "b_comf", c.models.human.b_comf);
            get_if(h, "s0", c.models.human.s0);
            get_if(h, "time_headway", c.models.human.time_headway);
            get_if(h, "delta", c.models.human.delta);
        }
        if (m.contains("acc")) {
            const auto& a = m.at("acc");
            get_if(a, "k_gap", c.models.acc.k_gap);
            get_if(a, "k_speed", c.models.acc.k_speed);
            if (a.contains("safety")) {
                const auto& s = a.at("safety");
                get_if(s, "a_max", c.models.acc.safety.a_max);
                get_if(s, "b_comf", c.models.acc.safety.b_comf);
                get_if(s, "s0", c.models.acc.safety.s0);
                get_if(s, "time_headway", c.models.acc.safety.time_headway);
                get_if(s, "delta", c.models.acc.safety.delta);
            }
        }
        if (m.contains("mobil")) {
            const auto& mb = m.at("mobil");
            get_if(mb, "b_safe", c.models.mobil.b_safe);
            get_if(mb, "assert_relax", c.models.mobil.assert_relax);
            get_if(mb, "politeness", c.models.mobil.politeness);
            get_if(mb, "advantage_threshold", c.models.mobil.advantage_threshold);
            get_if(mb, "min_gap_time", c.models.mobil.min_gap_time);
            get_if(mb, "cooldown", c.models.mobil.cooldown);
        }
    }
    if (j.contains("fuel")) {
        const auto& f = j.at("fuel");
        get_if(f, "beta0", c.fuel.beta0);
        get_if(f, "beta1", c.fuel.beta1);
        get_if(f, "beta2", c.fuel.beta2);
        get_if(f, "beta3", c.fuel.beta3);
    }

    if (!reward_segment_set) c.mdp.reward.segment_length = c.geometry.segment_length;
    if (!rsu_position_set) c.rsu.position = c.geometry.merge_point;

    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config is not valid JSON (" + path + "): " + e.what());
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["geometry"] = {{"segment_length", geometry.segment_length},
                     {"main_lane_count", geometry.main_lane_count},
                     {"ramp_length", geometry.ramp_length},
                     {"accel_lane_length", geometry.accel_lane_length},
                     {"merge_point", geometry.merge_point},
                     {"speed_limit_main", geometry.speed_limit_main},
                     {"speed_limit_ramp", geometry.speed_limit_ramp}};
    j["traffic"] = {{"main_rate", traffic.main_rate},
                    {"ramp_rate", traffic.ramp_rate},
                    {"penetration", traffic.penetration},
                    {"assertiveness", traffic.assertiveness}};
    j["controller"] = {{"type", controller.type},
                       {"model_path", controller.model_path},
                       {"fixed_headway", controller.fixed_headway},
                       {"threshold",
                        {{"flow_threshold", controller.threshold.flow_threshold},
                         {"h_low", controller.threshold.h_low},
                         {"h_high", controller.threshold.h_high}}}};
    j["mdp"] = {{"action_min", mdp.action_min},
                {"action_max", mdp.action_max},
                {"action_count", mdp.action_count},
                {"jam_density", mdp.jam_density},
                {"reward",
                 {{"congestion_speed", mdp.reward.congestion_speed},
                  {"segment_length", mdp.reward.segment_length},
                  {"delay_window", mdp.reward.delay_window}}}};
    j["dqn"] = {{"gamma", dqn.gamma},
                {"epsilon0", dqn.epsilon0},
                {"epsilon_min", dqn.epsilon_min},
                {"lambda_decay", dqn.lambda_decay},
                {"batch_size", dqn.batch_size},
                {"learning_rate", dqn.learning_rate},
                {"target_sync_episodes", dqn.target_sync_episodes},
                {"replay_capacity", dqn.replay_capacity}};
    j["run"] = {{"horizon", run.horizon},       {"dt", run.dt},
                {"action_interval", run.action_interval}, {"episodes", run.episodes},
                {"eval_seeds", run.eval_seeds}, {"seed", run.seed}};
    j["v2x"] = {{"rsu_position", rsu.position},
                {"range", rsu.range},
                {"broadcast_period", rsu.broadcast_period}};
    j["models"] = {{"human",
                    {{"a_max", models.human.a_max},
                     {"b_comf", models.human.b_comf},
                     {"s0", models.human.s0},
                     {"time_headway", models.human.time_headway},
                     {"delta", models.human.delta}}},
                   {"acc",
                    {{"k_gap", models.acc.k_gap},
                     {"k_speed", models.acc.k_speed},
                     {"safety",
                      {{"a_max", models.acc.safety.a_max},
                       {"b_comf", models.acc.safety.b_comf},
                       {"s0", models.acc.safety.s0},
                       {"time_headway", models.acc.safety.time_headway},
                       {"delta", models.acc.safety.delta}}}}},
                   {"mobil",
                    {{"b_safe", models.mobil.b_safe},
                     {"assert_relax", models.mobil.assert_relax},
                     {"politeness", models.mobil.politeness},
                     {"advantage_threshold", models.mobil.advantage_threshold},
                     {"min_gap_time", models.mobil.min_gap_time},
                     {"cooldown", models.mobil.cooldown}}}};
    j["fuel"] = {{"beta0", fuel.beta0}, {"beta1", fuel.beta1}, {"beta2", fuel.beta2},
                 {"beta3", fuel.beta3}};
    return j;
}

std::vector<std::string> RunConfig::range_warnings() const {
    std::vector<std::string> warnings;
    auto warn = [&](std::string msg) { warnings.push_back(std::move(msg)); };
    std::ostringstream os;
    auto range_check = [&](const char* name, double value, double lo, double hi) {
        if (value < lo || value > hi) {
            os.str("");
            os << name << "=" << value << " outside the studied range [" << lo << ", " << hi << "]";
            warn(os.str());
        }
    };
    range_check("traffic.main_rate", traffic.main_rate, 900.0, 3700.0);
    range_check("traffic.ramp_rate", traffic.ramp_rate, 200.0, 900.0);
    range_check("geometry.accel_lane_length", geometry.accel_lane_length, 50.0, 180.0);
    range_check("traffic.assertiveness", traffic.assertiveness, 0.0, 1.0);
    range_check("traffic.penetration", traffic.penetration, 0.0, 1.0);
    return warnings;
}

void RunConfig::validate() const {
    geometry.validate();
    if (controller.type != "dacc" && controller.type != "fixed" && controller.type != "threshold" &&
        controller.type != "human")
        throw std::invalid_argument("controller.type must be dacc|fixed|threshold|human");
    baselines::validated_fixed_headway(controller.fixed_headway);
    controller.threshold.validate();
    action_set().validate();
    dqn.validate();
    if (!(mdp.reward.congestion_speed > 0) || !(mdp.reward.segment_length > 0) ||
        !(mdp.reward.delay_window > 0))
        throw std::invalid_argument("mdp.reward fields must be > 0");
    if (!(run.dt > 0) || !(run.horizon > 0) || !(run.action_interval > 0))
        throw std::invalid_argument("run.dt, run.horizon, run.action_interval must be > 0");
    if (run.episodes < 1 || run.eval_seeds < 1)
        throw std::invalid_argument("run.episodes and run.eval_seeds must be >= 1");
    if (!(rsu.range > 0) || !(rsu.broadcast_period > 0))
        throw std::invalid_argument("v2x.range and v2x.broadcast_period must be > 0");
    if (traffic.main_rate < 0 || traffic.ramp_rate < 0)
        throw std::invalid_argument("traffic rates must be >= 0");
}

}  // namespace rampflow::config
