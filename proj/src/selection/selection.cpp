#include "tsko/selection/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tsko/errors.hpp"

namespace tsko::selection {

double knockoff_threshold(std::span<const double> W, double q, bool plus) {
    if (!(q > 0.0 && q < 1.0)) {
        throw ConfigError("target FDR level q must lie in (0, 1), got " + std::to_string(q));
    }
    std::vector<double> sorted(W.begin(), W.end());
    if (std::any_of(sorted.begin(), sorted.end(), [](double w) { return std::isnan(w); })) {
        throw NumericError("knockoff statistics contain NaN");
    }
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> candidates;
    candidates.reserve(sorted.size());
    for (double w : sorted) {
        if (w != 0.0) {
            candidates.push_back(std::abs(w));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const double offset = plus ? 1.0 : 0.0;
    for (double t : candidates) {
        const auto negatives = std::upper_bound(sorted.begin(), sorted.end(), -t) - sorted.begin();
        const auto positives = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t);
        const double ratio = (offset + static_cast<double>(negatives)) /
                             static_cast<double>(std::max<std::ptrdiff_t>(positives, 1));
        if (ratio <= q) {
            return t;
        }
    }
    return kInfinity;
}

std::vector<std::size_t> select(std::span<const double> W, double threshold) {
    std::vector<std::size_t> out;
    if (std::isinf(threshold) && threshold > 0) {
        return out;
    }
    for (std::size_t j = 0; j < W.size(); ++j) {
        if (W[j] >= threshold) {
            out.push_back(j);
        }
    }
    return out;
}

SelectionReport make_selection(std::span<const double> W, double q, bool plus) {
    SelectionReport r;
    r.q = q;
    r.plus = plus;
    r.threshold = knockoff_threshold(W, q, plus);
    r.selected = select(W, r.threshold);
    r.W.assign(W.begin(), W.end());
    return r;
}

EvalMetrics evaluate(std::span<const std::size_t> selected, std::span<const std::size_t> truth, double q) {
    if (truth.empty()) {
        throw DataError("true discovery proportion needs a non-empty true signal set");
    }
    if (!(q > 0.0 && q < 1.0)) {
        throw ConfigError("target FDR level q must lie in (0, 1)");
    }
    std::vector<std::size_t> s0(truth.begin(), truth.end());
    std::sort(s0.begin(), s0.end());
    s0.erase(std::unique(s0.begin(), s0.end()), s0.end());

    EvalMetrics m;
    m.selected = selected.size();
    for (auto j : selected) {
        if (std::binary_search(s0.begin(), s0.end(), j)) {
            ++m.true_discoveries;
        } else {
            ++m.false_discoveries;
        }
    }
    m.fdp = static_cast<double>(m.false_discoveries) / static_cast<double>(std::max<std::size_t>(m.selected, 1));
    m.tdp = static_cast<double>(m.true_discoveries) / static_cast<double>(s0.size());
    m.mfdr_term = static_cast<double>(m.false_discoveries) / (static_cast<double>(m.selected) + 1.0 / q);
    return m;
}

std::size_t FrequencyReport::total_selections() const { return std::accumulate(counts.begin(), counts.end(), 0ULL); }

FrequencyReport aggregate_runs(const std::vector<std::vector<std::size_t>>& runs, std::size_t features,
                               std::size_t bins) {
    if (runs.empty()) {
        throw DataError("cannot aggregate an empty list of runs");
    }
    if (bins == 0) {
        throw ConfigError("histogram needs at least one bin");
    }
    FrequencyReport r;
    r.runs = runs.size();
    r.counts.assign(features, 0);
    for (const auto& run : runs) {
        for (auto j : run) {
            if (j >= features) {
                throw DataError("selected index " + std::to_string(j) + " is out of range");
            }
            ++r.counts[j];
        }
    }
    r.order.resize(features);
    std::iota(r.order.begin(), r.order.end(), std::size_t{0});
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](std::size_t a, std::size_t b) { return r.counts[a] > r.counts[b]; });
    r.histogram.assign(bins, 0);
    for (auto c : r.counts) {
        const std::size_t b = std::min(bins - 1, c * bins / r.runs);
        ++r.histogram[b];
    }
    return r;
}

} // namespace tsko::selection
