#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tsko/knockoff/knockoffs.hpp"
#include "tsko/panel.hpp"
#include "tsko/predict/prediction_net.hpp"
#include "tsko/predict/statistics.hpp"
#include "tsko/selection/selection.hpp"
#include "tsko/sim/sim_lab.hpp"

namespace tsko::pipeline {

struct RunConfig {
    int epochs_autoencoder = 1000;
    int epochs_prediction = 1000;
    Index bottleneck = 15;
    int autoencoder_layers = 1;
    Index dense_units = 32;
    Index lstm_units = 32;
    bool batch_norm = false;
    double learning_rate_autoencoder = 1e-3;
    double learning_rate_prediction = 1e-3;
    double q = 0.2;
    int repetitions = 1;
    int threads = 1;
    std::uint64_t seed = 0;

    void validate() const;

    knockoff::KnockoffConfig knockoff_config(std::uint64_t run_seed) const;
    predict::PredictionConfig prediction_config(std::uint64_t run_seed) const;
};

/// Seed of run r under a master seed; independent of how many runs exist.
std::uint64_t run_seed(std::uint64_t master, std::size_t run);

struct Dataset {
    TimeSeriesPanel panel;
    /// Indices of the relevant features when known (simulation).
    std::optional<std::vector<std::size_t>> truth;
};

/// Produces the data of one run from that run's seed.
using DataProvider = std::function<Dataset(std::uint64_t run_seed)>;

/// The same data for every run.
DataProvider fixed_data(Dataset data);
/// A fresh simulation per run, seeded from the run seed.
DataProvider simulated_data(sim::SimConfig config);
/// The simulation a run seed draws under simulated_data.
Dataset simulate_for_run(sim::SimConfig config, std::uint64_t run_seed);

struct RuleOutcome {
    selection::SelectionReport report;
    std::optional<selection::EvalMetrics> metrics;
};

struct RunOutcome {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::vector<knockoff::KnockoffResult> knockoffs;
    predict::KnockoffStatistics statistics;
    RuleOutcome knockoff;
    RuleOutcome knockoff_plus;
    double autoencoder_loss = 0.0;
    double prediction_loss = 0.0;
};

/// Metrics against a known truth. With an empty truth the FDP is still
/// defined and the TDP is reported as NaN.
selection::EvalMetrics evaluate_against(std::span<const std::size_t> selected, std::span<const std::size_t> truth,
                                        double q);

/// Knockoffs, prediction network, statistics and both selection rules.
RunOutcome run_pipeline(const Dataset& data, const RunConfig& config, std::uint64_t seed);

/// The stages after knockoff generation, for externally supplied knockoffs.
RunOutcome select_with_knockoffs(const Dataset& data, const TimeSeriesPanel& knockoffs, const RunConfig& config,
                                 std::uint64_t seed);

struct MeanMetrics {
    double fdr = 0.0;
    double power = 0.0;
    double mfdr = 0.0;
    double mean_selected = 0.0;
    /// False when the truth was unknown; fdr, power and mfdr are then NaN.
    bool evaluated = false;
};

struct RepeatSummary {
    std::vector<RunOutcome> runs; // knockoff matrices dropped to save memory
    selection::FrequencyReport frequency;
    selection::FrequencyReport frequency_plus;
    MeanMetrics knockoff;
    MeanMetrics knockoff_plus;
    std::vector<std::string> feature_names;
};

MeanMetrics summarize(const std::vector<RunOutcome>& runs, bool plus);

/// config.repetitions independent runs; run r uses run_seed(config.seed, r)
/// and executes on a pool of config.threads workers.
RepeatSummary run_repeat(const DataProvider& data, const RunConfig& config);

} // namespace tsko::pipeline
