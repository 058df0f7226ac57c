#include "rampflow/dqn/network.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "rampflow/kernels/dense.hpp"

namespace rampflow::dqn {

QNetwork::QNetwork(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
    if (sizes_.size() < 2) throw std::invalid_argument("QNetwork: need at least input and output");
    if (sizes_.size() > kMaxLayers + 1) throw std::invalid_argument("QNetwork: too many layers");
    for (int w : sizes_) {
        if (w < 1 || w > kMaxWidth) throw std::invalid_argument("QNetwork: layer width out of range");
    }
    params_.resize(sizes_.size() - 1);
    for (std::size_t l = 0; l < params_.size(); ++l) {
        params_[l].in = sizes_[l];
        params_[l].out = sizes_[l + 1];
        params_[l].w.assign(static_cast<std::size_t>(sizes_[l]) * sizes_[l + 1], 0.0);
        params_[l].b.assign(sizes_[l + 1], 0.0);
    }
    target_ = params_;
}

void QNetwork::init_he(Rng& rng) {
    for (auto& layer : params_) {
        const double scale = std::sqrt(2.0 / layer.in);
        for (auto& w : layer.w) w = scale * rng.normal();
        for (auto& b : layer.b) b = 0.0;
    }
    target_ = params_;
}

void QNetwork::init_optimistic(Rng& rng, double output_bias) {
    init_he(rng);
    for (auto& b : params_.back().b) b = output_bias;
    target_ = params_;
}

void QNetwork::forward_stack(const LayerStack& stack, std::span<const double> s,
                             std::span<double> q_out) {
    std::array<double, kMaxWidth> buf_a{};
    std::array<double, kMaxWidth> buf_b{};
    double* cur = buf_a.data();
    double* next = buf_b.data();
    std::memcpy(cur, s.data(), s.size() * sizeof(double));
    for (std::size_t l = 0; l < stack.size(); ++l) {
        const Layer& layer = stack[l];
        kernels::matvec({layer.w.data(), layer.w.size()}, {layer.b.data(), layer.b.size()},
                        static_cast<std::size_t>(layer.out), static_cast<std::size_t>(layer.in),
                        {cur, static_cast<std::size_t>(layer.in)},
                        {next, static_cast<std::size_t>(layer.out)});
        if (l + 1 < stack.size()) {
            kernels::relu({next, static_cast<std::size_t>(layer.out)});
        }
        std::swap(cur, next);
    }
    std::memcpy(q_out.data(), cur, q_out.size() * sizeof(double));
}

void QNetwork::forward(std::span<const double> s, std::span<double> q_out) const {
    forward_stack(params_, s, q_out);
}

void QNetwork::target_forward(std::span<const double> s, std::span<double> q_out) const {
    forward_stack(target_, s, q_out);
}

LayerStack zeros_like(const LayerStack& stack) {
    LayerStack g = stack;
    for (auto& layer : g) {
        std::fill(layer.w.begin(), layer.w.end(), 0.0);
        std::fill(layer.b.begin(), layer.b.end(), 0.0);
    }
    return g;
}

LayerStack QNetwork::backward(std::span<const BatchItem> batch) const {
    if (batch.empty()) throw std::invalid_argument("backward: empty batch");
    LayerStack grads = zeros_like(params_);
    const std::size_t depth = params_.size();
    const double inv_batch = 1.0 / static_cast<double>(batch.size());

    // pre-activations z[l] and activations act[l] (act[0] = input)
    std::array<std::array<double, kMaxWidth>, kMaxLayers + 1> z{};
    std::array<std::array<double, kMaxWidth>, kMaxLayers + 1> act{};
    std::array<double, kMaxWidth> delta{};
    std::array<double, kMaxWidth> delta_prev{};

    for (const BatchItem& item : batch) {
        std::memcpy(act[0].data(), item.s.data(), item.s.size() * sizeof(double));
        for (std::size_t l = 0; l < depth; ++l) {
            const Layer& layer = params_[l];
            kernels::matvec({layer.w.data(), layer.w.size()}, {layer.b.data(), layer.b.size()},
                            static_cast<std::size_t>(layer.out),
                            static_cast<std::size_t>(layer.in),
                            {act[l].data(), static_cast<std::size_t>(layer.in)},
                            {z[l + 1].data(), static_cast<std::size_t>(layer.out)});
            std::memcpy(act[l + 1].data(), z[l + 1].data(),
                        static_cast<std::size_t>(layer.out) * sizeof(double));
            if (l + 1 < depth) {
                kernels::relu({act[l + 1].data(), static_cast<std::size_t>(layer.out)});
            }
        }

        // Loss flows only through the taken action's output.
        const int out_width = params_.back().out;
        std::fill(delta.begin(), delta.begin() + out_width, 0.0);
        const double q_taken = act[depth][static_cast<std::size_t>(item.a)];
        delta[static_cast<std::size_t>(item.a)] = 2.0 * (q_taken - item.y) * inv_batch;

        for (std::size_t l = depth; l-- > 0;) {
            const Layer& layer = params_[l];
            Layer& grad = grads[l];
            const std::size_t rows = static_cast<std::size_t>(layer.out);
            const std::size_t cols = static_cast<std::size_t>(layer.in);
            for (std::size_t r = 0; r < rows; ++r) {
                if (delta[r] == 0.0) continue;
                kernels::axpy(delta[r], {act[l].data(), cols}, {grad.w.data() + r * cols, cols});
                grad.b[r] += delta[r];
            }
            if (l > 0) {
                std::fill(delta_prev.begin(), delta_prev.begin() + cols, 0.0);
                for (std::size_t r = 0; r < rows; ++r) {
                    if (delta[r] == 0.0) continue;
                    kernels::axpy(delta[r], {layer.w.data() + r * cols, cols},
                                  {delta_prev.data(), cols});
                }
                kernels::relu_backward({z[l].data(), cols}, {delta_prev.data(), cols});
                std::memcpy(delta.data(), delta_prev.data(), cols * sizeof(double));
            }
        }
    }
    return grads;
}

void QNetwork::sgd_step(const LayerStack& grads, double learning_rate) {
    for (std::size_t l = 0; l < params_.size(); ++l) {
        kernels::axpy(-learning_rate, {grads[l].w.data(), grads[l].w.size()},
                      {params_[l].w.data(), params_[l].w.size()});
        kernels::axpy(-learning_rate, {grads[l].b.data(), grads[l].b.size()},
                      {params_[l].b.data(), params_[l].b.size()});
    }
}

void QNetwork::apply_batch(std::span<const BatchItem> batch, double learning_rate) {
    sgd_step(backward(batch), learning_rate);
}

bool QNetwork::finite() const {
    for (const auto& layer : params_) {
        for (double w : layer.w)
            if (!std::isfinite(w)) return false;
        for (double b : layer.b)
            if (!std::isfinite(b)) return false;
    }
    return true;
}

}  // namespace rampflow::dqn
