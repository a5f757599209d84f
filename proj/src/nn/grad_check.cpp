#include "tsko/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tsko::nn {

std::string GradCheckReport::summary() const {
    std::ostringstream os;
    for (const auto& t : tensors) {
        os << t.name << ": max rel " << t.max_relative_error << " max abs " << t.max_abs_error
           << (t.passed ? "" : "  FAIL") << '\n';
    }
    return os.str();
}

GradCheckReport grad_check(std::span<const ParamSlot> params, const LossFunction& loss, double step, double tolerance,
                           double denominator_floor) {
    for (const auto& p : params) {
        std::fill(p.grad.begin(), p.grad.end(), 0.0);
    }
    loss(true);

    std::vector<std::vector<double>> analytic;
    analytic.reserve(params.size());
    for (const auto& p : params) {
        analytic.emplace_back(p.grad.begin(), p.grad.end());
    }

    GradCheckReport report;
    for (std::size_t s = 0; s < params.size(); ++s) {
        const auto& p = params[s];
        TensorCheck check{p.name};
        for (std::size_t j = 0; j < p.value.size(); ++j) {
            const double saved = p.value[j];
            p.value[j] = saved + step;
            const double up = loss(false);
            p.value[j] = saved - step;
            const double down = loss(false);
            p.value[j] = saved;

            const double numeric = (up - down) / (2.0 * step);
            const double a = analytic[s][j];
            const double diff = std::abs(a - numeric);
            const double denom = std::max({std::abs(a), std::abs(numeric), denominator_floor});
            check.max_abs_error = std::max(check.max_abs_error, diff);
            check.max_relative_error = std::max(check.max_relative_error, diff / denom);
        }
        check.passed = check.max_relative_error < tolerance;
        report.max_relative_error = std::max(report.max_relative_error, check.max_relative_error);
        report.passed = report.passed && check.passed;
        report.tensors.push_back(std::move(check));
    }
    return report;
}

} // namespace tsko::nn
