#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsko/pipeline/pipeline.hpp"

namespace tsko::pipeline {

/// A swept parameter. Recognised names: epochs (both networks),
/// epochs_autoencoder, epochs_prediction, bottleneck, A, p, n, m, s.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepCell {
    double row_value = 0.0;
    double col_value = 0.0;
    MeanMetrics knockoff;
    MeanMetrics knockoff_plus;
};

struct SweepResult {
    SweepAxis rows;
    std::optional<SweepAxis> cols;
    std::vector<SweepCell> cells; // row-major
    int repetitions = 0;

    const SweepCell& at(std::size_t r, std::size_t c = 0) const;
};

/// Applies one axis value to the run and simulation settings. Throws
/// ConfigError for unknown names or values that are not whole numbers where
/// an integer is required.
void apply_axis(const std::string& name, double value, RunConfig& run, sim::SimConfig& sim);

/// For each cell, config.repetitions runs on fresh simulations. Repetition r
/// uses run_seed(config.seed, r) in every cell, so cells differ only in the
/// swept settings. All cell-repetition pairs share one worker pool.
SweepResult run_sweep(const sim::SimConfig& base, const RunConfig& config, const SweepAxis& rows,
                      const std::optional<SweepAxis>& cols);

} // namespace tsko::pipeline
