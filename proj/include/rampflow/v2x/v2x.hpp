#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rampflow/road/world.hpp"
#include "rampflow/v2x/bulletin.hpp"

namespace rampflow::v2x {

// Pure snapshot aggregation over the world: densities per km per lane, mean
// speeds (empty lane group falls back to its speed limit so downstream
// features are always defined), constants copied from geometry/config.
TrafficBulletin aggregate(const road::WorldState& world, double congestion_speed);

// Caches the bulletin into every connected vehicle within range of the RSU.
// Returns the receiving vehicle ids. Vehicles outside range keep their last
// cached bulletin (staleness is allowed).
std::vector<std::uint64_t> deliver(const TrafficBulletin& bulletin, road::WorldState& world,
                                   const RsuConfig& rsu);

nlohmann::json to_json(const TrafficBulletin& b);
TrafficBulletin bulletin_from_json(const nlohmann::json& j);

}  // namespace rampflow::v2x
