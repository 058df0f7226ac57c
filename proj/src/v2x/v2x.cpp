#include "rampflow/v2x/v2x.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace rampflow::v2x {

TrafficBulletin aggregate(const road::WorldState& world, double congestion_speed) {
    const auto& geo = world.geometry();
    const auto& lanes = world.lanes();

    std::size_t main_count = 0;
    double main_speed_sum = 0.0;
    for (int l = 0; l < geo.main_lane_count; ++l) {
        main_count += lanes[l].size();
        for (const auto& v : lanes[l]) main_speed_sum += v.speed;
    }
    const auto& merge = lanes[geo.merge_lane()];
    std::size_t ramp_count = merge.size();
    double ramp_speed_sum = 0.0;
    for (const auto& v : merge) ramp_speed_sum += v.speed;

    TrafficBulletin b;
    const double main_km = geo.segment_length / 1000.0;
    const double ramp_km = (geo.ramp_length + geo.accel_lane_length) / 1000.0;
    b.main_density = static_cast<double>(main_count) / (main_km * geo.main_lane_count);
    b.ramp_density = static_cast<double>(ramp_count) / ramp_km;
    b.main_avg_speed =
        main_count > 0 ? main_speed_sum / static_cast<double>(main_count) : geo.speed_limit_main;
    b.ramp_avg_speed =
        ramp_count > 0 ? ramp_speed_sum / static_cast<double>(ramp_count) : geo.speed_limit_ramp;
    b.ramp_length = geo.ramp_length;
    b.segment_length = geo.segment_length;
    b.congestion_speed = congestion_speed;
    b.timestamp = world.clock();
    return b;
}

std::vector<std::uint64_t> deliver(const TrafficBulletin& bulletin, road::WorldState& world,
                                   const RsuConfig& rsu) {
    std::vector<std::uint64_t> receivers;
    for (road::Vehicle* v : world.vehicles()) {
        if (!v->connected()) continue;
        if (std::abs(v->position - rsu.position) <= rsu.range) {
            v->bulletin = bulletin;
            receivers.push_back(v->id);
        }
    }
    return receivers;
}

nlohmann::json to_json(const TrafficBulletin& b) {
    return nlohmann::json{{"main_density", b.main_density},
                          {"main_avg_speed", b.main_avg_speed},
                          {"ramp_density", b.ramp_density},
                          {"ramp_avg_speed", b.ramp_avg_speed},
                          {"ramp_length", b.ramp_length},
                          {"segment_length", b.segment_length},
                          {"congestion_speed", b.congestion_speed},
                          {"timestamp", b.timestamp}};
}

TrafficBulletin bulletin_from_json(const nlohmann::json& j) {
    TrafficBulletin b;
    b.main_density = j.at("main_density").get<double>();
    b.main_avg_speed = j.at("main_avg_speed").get<double>();
    b.ramp_density = j.at("ramp_density").get<double>();
    b.ramp_avg_speed = j.at("ramp_avg_speed").get<double>();
    b.ramp_length = j.at("ramp_length").get<double>();
    b.segment_length = j.at("segment_length").get<double>();
    b.congestion_speed = j.at("congestion_speed").get<double>();
    b.timestamp = j.at("timestamp").get<double>();
    return b;
}

}  // namespace rampflow::v2x
