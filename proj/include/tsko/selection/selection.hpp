#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tsko::selection {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/**
 * Smallest t among the positive magnitudes |W_j| with
 *
 *     (offset + #{j : W_j <= -t}) / max(#{j : W_j >= t}, 1) <= q
 *
 * where offset is 0 for the knockoff rule and 1 for knockoff+. Returns
 * +infinity when no candidate qualifies. Throws ConfigError unless 0 < q < 1.
 */
double knockoff_threshold(std::span<const double> W, double q, bool plus = false);

inline double knockoff_plus_threshold(std::span<const double> W, double q) { return knockoff_threshold(W, q, true); }

/// Indices j (0-based, ascending) with W_j >= T; empty for T = +infinity.
std::vector<std::size_t> select(std::span<const double> W, double threshold);

struct SelectionReport {
    double q = 0.2;
    bool plus = false;
    double threshold = kInfinity;
    std::vector<std::size_t> selected;
    std::vector<double> W;
};

SelectionReport make_selection(std::span<const double> W, double q, bool plus);

struct EvalMetrics {
    double fdp = 0.0;
    double tdp = 0.0;
    double mfdr_term = 0.0;
    std::size_t selected = 0;
    std::size_t true_discoveries = 0;
    std::size_t false_discoveries = 0;
};

/// FDP = false / max(|S|, 1), TDP = true / |S0|, mFDR term = false / (|S| + 1/q).
/// Throws DataError when S0 is empty.
EvalMetrics evaluate(std::span<const std::size_t> selected, std::span<const std::size_t> truth, double q);

struct FrequencyReport {
    std::size_t runs = 0;
    std::vector<std::size_t> counts;      // per feature
    std::vector<std::size_t> order;       // features by count descending, index ascending on ties
    std::vector<std::size_t> histogram;   // histogram[b]: features whose frequency falls in bin b

    std::size_t total_selections() const;
};

/// Counts per-feature selections across runs. `bins` equal-width bins over
/// [0, runs] make up the histogram. Throws DataError for an empty run list
/// or out-of-range indices.
FrequencyReport aggregate_runs(const std::vector<std::vector<std::size_t>>& runs, std::size_t features,
                               std::size_t bins = 10);

} // namespace tsko::selection
