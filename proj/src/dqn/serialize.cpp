#include "rampflow/dqn/serialize.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace rampflow::dqn {

void save_model(const QNetwork& net, const mdp::ActionSet& actions, const mdp::Normalization& norm,
                const std::string& path) {
    nlohmann::json j;
    j["schema_version"] = kModelSchemaVersion;
    j["layer_sizes"] = net.layer_sizes();
    nlohmann::json weights = nlohmann::json::array();
    nlohmann::json biases = nlohmann::json::array();
    for (const auto& layer : net.params()) {
        weights.push_back(layer.w);
        biases.push_back(layer.b);
    }
    j["weights"] = std::move(weights);
    j["biases"] = std::move(biases);
    j["action_set"] = actions.targets;
    j["normalization"] = {{"jam_density", norm.jam_density},
                          {"speed_norm", norm.speed_norm},
                          {"ramp_length_norm", norm.ramp_length_norm}};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

ModelBundle load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("model file is not valid JSON (" + path + "): " + e.what());
    }

    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kModelSchemaVersion)
        throw std::runtime_error("model file: unsupported schema_version");

    const auto sizes = j.at("layer_sizes").get<std::vector<int>>();
    QNetwork net(sizes);

    const auto& weights = j.at("weights");
    const auto& biases = j.at("biases");
    if (weights.size() != net.params().size() || biases.size() != net.params().size())
        throw std::runtime_error("model file: layer count mismatch");
    for (std::size_t l = 0; l < net.params().size(); ++l) {
        auto w = weights[l].get<std::vector<double>>();
        auto b = biases[l].get<std::vector<double>>();
        if (w.size() != net.params()[l].w.size() || b.size() != net.params()[l].b.size())
            throw std::runtime_error("model file: weight shape mismatch");
        net.params()[l].w = std::move(w);
        net.params()[l].b = std::move(b);
    }
    net.sync_target();

    mdp::ActionSet actions;
    actions.targets = j.at("action_set").get<std::vector<double>>();
    actions.validate();
    if (actions.size() != net.action_count())
        throw std::runtime_error("model file: action set size does not match network output");

    mdp::Normalization norm;
    const auto& n = j.at("normalization");
    norm.jam_density = n.at("jam_density").get<double>();
    norm.speed_norm = n.at("speed_norm").get<double>();
    norm.ramp_length_norm = n.at("ramp_length_norm").get<double>();

    return ModelBundle{std::move(net), std::move(actions), norm};
}

}  // namespace rampflow::dqn
