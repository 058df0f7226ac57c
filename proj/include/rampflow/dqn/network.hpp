#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rampflow/rng.hpp"

namespace rampflow::dqn {

struct BatchItem {
    std::span<const double> s;
    int a = 0;
    double y = 0.0;  // TD target for the taken action
};

// Value-function approximator driven by the training loop. Implemented by the
// MLP below and by the lookup-table oracle in the tests.
class QFunction {
public:
    virtual ~QFunction() = default;
    virtual int input_size() const = 0;
    virtual int action_count() const = 0;
    virtual void forward(std::span<const double> s, std::span<double> q_out) const = 0;
    virtual void target_forward(std::span<const double> s, std::span<double> q_out) const = 0;
    // One optimization step on the mean squared error of the taken actions.
    virtual void apply_batch(std::span<const BatchItem> batch, double learning_rate) = 0;
    virtual void sync_target() = 0;
    virtual bool finite() const = 0;

    std::vector<double> forward_values(std::span<const double> s) const {
        std::vector<double> q(static_cast<std::size_t>(action_count()));
        forward(s, q);
        return q;
    }
};

struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // row-major, out x in
    std::vector<double> b;
};

using LayerStack = std::vector<Layer>;

// Plain MLP: ReLU on hidden layers, identity output, double precision
// throughout. Holds the online weights and a frozen target copy.
class QNetwork final : public QFunction {
public:
    static constexpr int kMaxWidth = 64;
    static constexpr int kMaxLayers = 8;

    explicit QNetwork(std::vector<int> layer_sizes);

    void init_he(Rng& rng);  // He-scaled normal weights, zero biases

    // He weights plus an optimistic constant on the output layer: untried
    // actions keep values above anything realizable, so a fleet sharing one
    // policy sweeps the action set before settling (shared rewards give a
    // lone explorer no credit, so plain epsilon-greedy cannot).
    void init_optimistic(Rng& rng, double output_bias);

    int input_size() const override { return sizes_.front(); }
    int action_count() const override { return sizes_.back(); }
    const std::vector<int>& layer_sizes() const { return sizes_; }

    void forward(std::span<const double> s, std::span<double> q_out) const override;
    void target_forward(std::span<const double> s, std::span<double> q_out) const override;

    // Gradient of the batch-mean MSE on the taken-action outputs.
    LayerStack backward(std::span<const BatchItem> batch) const;
    void sgd_step(const LayerStack& grads, double learning_rate);
    void apply_batch(std::span<const BatchItem> batch, double learning_rate) override;

    void sync_target() override { target_ = params_; }
    bool finite() const override;

    LayerStack& params() { return params_; }
    const LayerStack& params() const { return params_; }
    const LayerStack& target_params() const { return target_; }

private:
    static void forward_stack(const LayerStack& stack, std::span<const double> s,
                              std::span<double> q_out);

    std::vector<int> sizes_;
    LayerStack params_;
    LayerStack target_;
};

LayerStack zeros_like(const LayerStack& stack);

}  // namespace rampflow::dqn
