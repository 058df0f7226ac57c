#pragma once

#include <cstddef>
#include <vector>

#include "rampflow/rng.hpp"

namespace rampflow::dqn {

struct Experience {
    std::vector<double> s;
    int a = 0;
    double r = 0.0;
    std::vector<double> s_next;
    bool done = false;
};

// Fixed-capacity ring with FIFO eviction and uniform sampling.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

    void push(Experience e) {
        if (capacity_ == 0) return;
        if (data_.size() < capacity_) {
            data_.push_back(std::move(e));
        } else {
            data_[head_] = std::move(e);
            head_ = (head_ + 1) % capacity_;
        }
    }

    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }

    // Logical index: 0 is the oldest element.
    const Experience& at(std::size_t i) const { return data_[(head_ + i) % data_.size()]; }

    void sample(std::size_t n, Rng& rng, std::vector<const Experience*>& out) const {
        out.clear();
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(&data_[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(data_.size())))]);
        }
    }

private:
    std::size_t capacity_;
    std::size_t head_ = 0;
    std::vector<Experience> data_;
};

}  // namespace rampflow::dqn
