#include "tsko/nn/optim.hpp"

#include <algorithm>
#include <cmath>

namespace tsko::nn {

void adam_step(std::span<const ParamSlot> params, OptimizerState& state) {
    if (state.first_moment.empty()) {
        for (const auto& p : params) {
            state.first_moment.emplace_back(p.value.size(), 0.0);
            state.second_moment.emplace_back(p.value.size(), 0.0);
        }
    }
    require_shape(state.first_moment.size() == params.size(), "optimizer state tracks a different parameter list");

    const auto& cfg = state.config;
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double correction1 = 1.0 - std::pow(cfg.beta1, t);
    const double correction2 = 1.0 - std::pow(cfg.beta2, t);

    for (std::size_t s = 0; s < params.size(); ++s) {
        const auto& p = params[s];
        auto& m = state.first_moment[s];
        auto& v = state.second_moment[s];
        require_shape(p.grad.size() == p.value.size() && m.size() == p.value.size(),
                      "gradient for '" + p.name + "' is shaped differently from its parameter");
        for (std::size_t j = 0; j < p.value.size(); ++j) {
            const double g = p.grad[j];
            m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g;
            v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g * g;
            const double m_hat = m[j] / correction1;
            const double v_hat = v[j] / correction2;
            p.value[j] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
    }
}

void glorot_uniform(Matrix& m, Index fan_in, Index fan_out, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    // Fill row-major so the draw order does not depend on Eigen's storage.
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            m(r, c) = dist(rng);
        }
    }
}

void zero_grads(std::span<const ParamSlot> params) {
    for (const auto& p : params) {
        std::fill(p.grad.begin(), p.grad.end(), 0.0);
    }
}

} // namespace tsko::nn
