#include "rampflow/mdp/mdp.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rampflow/road/params.hpp"

namespace rampflow::mdp {

namespace {
double unit_clamp(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

StateVec featurize(const v2x::TrafficBulletin& b, const Normalization& n) {
    return {unit_clamp(b.main_density / n.jam_density),
            unit_clamp(b.ramp_density / n.jam_density),
            unit_clamp(b.main_avg_speed / n.speed_norm),
            unit_clamp(b.ramp_avg_speed / n.speed_norm),
            unit_clamp(b.ramp_length / n.ramp_length_norm)};
}

ActionSet ActionSet::linear_grid(double lo, double hi, int count) {
    ActionSet set;
    set.targets.resize(count);
    for (int i = 0; i < count; ++i) {
        set.targets[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    }
    set.validate();
    return set;
}

void ActionSet::validate() const {
    if (targets.size() < 2) throw std::invalid_argument("action set: need at least 2 targets");
    if (targets.front() < road::kMinHeadway)
        throw std::invalid_argument("action set: minimum target below 2.5 m");
    for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
        if (!(targets[i] < targets[i + 1]))
            throw std::invalid_argument("action set: targets must be strictly increasing");
    }
}

void apply_action(road::Vehicle& v, int action_index, const ActionSet& actions) {
    if (action_index < 0 || action_index >= actions.size())
        throw std::out_of_range("apply_action: action index out of range");
    v.headway_target = actions.targets[static_cast<std::size_t>(action_index)];
}

int reward(double avg_delay, const RewardConfig& cfg) {
    return avg_delay <= cfg.segment_length / cfg.congestion_speed ? +1 : -1;
}

nlohmann::json to_json(const Transition& t) {
    return nlohmann::json{{"s", t.s}, {"a", t.a}, {"r", t.r}, {"s_next", t.s_next}, {"done", t.done}};
}

void write_jsonl(const std::vector<Transition>& trajectory, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trajectory file: " + path);
    for (const auto& t : trajectory) out << to_json(t).dump() << '\n';
}

}  // namespace rampflow::mdp
