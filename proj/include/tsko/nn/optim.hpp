#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsko/nn/types.hpp"
#include "tsko/rng.hpp"

namespace tsko::nn {

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Moment accumulators for every slot, indexed in slot order.
struct OptimizerState {
    AdamConfig config;
    std::vector<std::vector<double>> first_moment;
    std::vector<std::vector<double>> second_moment;
    std::int64_t step = 0;

    OptimizerState() = default;
    explicit OptimizerState(AdamConfig cfg) : config(cfg) {}
};

/// One bias-corrected adaptive-moment update of every slot from its gradient.
/// Accumulators are allocated on first use.
void adam_step(std::span<const ParamSlot> params, OptimizerState& state);

/// Uniform Glorot draw in [-l, l], l = sqrt(6 / (fan_in + fan_out)).
void glorot_uniform(Matrix& m, Index fan_in, Index fan_out, Rng& rng);

void zero_grads(std::span<const ParamSlot> params);

} // namespace tsko::nn
