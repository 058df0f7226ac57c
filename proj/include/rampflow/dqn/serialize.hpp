#pragma once

#include <string>

#include "rampflow/dqn/network.hpp"
#include "rampflow/mdp/mdp.hpp"

namespace rampflow::dqn {

// Everything needed to reproduce decisions: the network plus the action set
// and featurization constants it was trained with.
struct ModelBundle {
    QNetwork net;
    mdp::ActionSet actions;
    mdp::Normalization norm;
};

constexpr int kModelSchemaVersion = 1;

// JSON model file; weight round-trip is bit-exact.
void save_model(const QNetwork& net, const mdp::ActionSet& actions, const mdp::Normalization& norm,
                const std::string& path);

// Throws std::runtime_error on parse errors, unknown schema versions, or any
// shape mismatch between the declared layer sizes, weights, and action set.
ModelBundle load_model(const std::string& path);

}  // namespace rampflow::dqn
