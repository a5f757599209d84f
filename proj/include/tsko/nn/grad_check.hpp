#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tsko/nn/types.hpp"

namespace tsko::nn {

struct TensorCheck {
    std::string name;
    double max_relative_error = 0.0;
    double max_abs_error = 0.0;
    bool passed = true;
};

struct GradCheckReport {
    std::vector<TensorCheck> tensors;
    double max_relative_error = 0.0;
    bool passed = true;

    std::string summary() const;
};

/// Evaluates the scalar loss; when `with_gradients` is set the analytic
/// gradients must also be written into the slots' gradient buffers.
using LossFunction = std::function<double(bool with_gradients)>;

/**
 * Compares analytic gradients against central differences.
 *
 * Each parameter entry is perturbed by +/- `step` in turn. The relative
 * error of an entry is |a - n| / max(|a|, |n|, `denominator_floor`), where
 * the floor keeps entries whose true gradient is zero (up to roundoff) from
 * dividing by nothing. A tensor fails when any entry exceeds `tolerance`.
 */
GradCheckReport grad_check(std::span<const ParamSlot> params, const LossFunction& loss, double step, double tolerance,
                           double denominator_floor = 1e-8);

} // namespace tsko::nn
