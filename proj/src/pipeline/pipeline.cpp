#include "tsko/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsko/errors.hpp"
#include "tsko/pipeline/worker_pool.hpp"
#include "tsko/rng.hpp"

namespace tsko::pipeline {

void RunConfig::validate() const {
    if (epochs_autoencoder < 0 || epochs_prediction < 0) {
        throw ConfigError("epochs must be non-negative");
    }
    if (bottleneck < 1) {
        throw ConfigError("bottleneck must be at least 1");
    }
    if (autoencoder_layers < 1) {
        throw ConfigError("autoencoder needs at least one layer per side");
    }
    if (dense_units < 1 || lstm_units < 1) {
        throw ConfigError("dense and LSTM widths must be at least 1");
    }
    if (!(learning_rate_autoencoder > 0.0) || !(learning_rate_prediction > 0.0)) {
        throw ConfigError("learning rates must be positive");
    }
    if (!(q > 0.0 && q < 1.0)) {
        throw ConfigError("q must lie in (0, 1)");
    }
    if (repetitions < 1) {
        throw ConfigError("repetitions must be at least 1");
    }
    if (threads < 1) {
        throw ConfigError("thread count must be at least 1");
    }
}

knockoff::KnockoffConfig RunConfig::knockoff_config(std::uint64_t seed) const {
    knockoff::KnockoffConfig c;
    c.autoencoder.bottleneck = bottleneck;
    c.autoencoder.layers_per_side = autoencoder_layers;
    c.autoencoder.epochs = epochs_autoencoder;
    c.autoencoder.adam.learning_rate = learning_rate_autoencoder;
    c.autoencoder.seed = derive_seed(seed, stream::autoencoder);
    c.seed = derive_seed(seed, stream::knockoff_noise);
    return c;
}

predict::PredictionConfig RunConfig::prediction_config(std::uint64_t seed) const {
    predict::PredictionConfig c;
    c.dense_units = dense_units;
    c.lstm_units = lstm_units;
    c.batch_norm = batch_norm;
    c.epochs = epochs_prediction;
    c.adam.learning_rate = learning_rate_prediction;
    c.seed = derive_seed(seed, stream::prediction);
    return c;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t run) { return derive_seed(master, {stream::run, run}); }

DataProvider fixed_data(Dataset data) {
    return [data = std::move(data)](std::uint64_t) { return data; };
}

Dataset simulate_for_run(sim::SimConfig config, std::uint64_t seed) {
    config.seed = derive_seed(seed, stream::simulation);
    auto sim = sim::simulate(config);
    return {std::move(sim.panel), std::move(sim.truth.S0)};
}

DataProvider simulated_data(sim::SimConfig config) {
    config.validate();
    return [config](std::uint64_t seed) { return simulate_for_run(config, seed); };
}

selection::EvalMetrics evaluate_against(std::span<const std::size_t> selected, std::span<const std::size_t> truth,
                                        double q) {
    if (!truth.empty()) {
        return selection::evaluate(selected, truth, q);
    }
    if (!(q > 0.0 && q < 1.0)) {
        throw ConfigError("q must lie in (0, 1)");
    }
    selection::EvalMetrics m;
    m.selected = selected.size();
    m.false_discoveries = selected.size();
    m.fdp = selected.empty() ? 0.0 : 1.0;
    m.tdp = std::numeric_limits<double>::quiet_NaN();
    m.mfdr_term = static_cast<double>(selected.size()) / (static_cast<double>(selected.size()) + 1.0 / q);
    return m;
}

RunOutcome select_with_knockoffs(const Dataset& data, const TimeSeriesPanel& knockoffs, const RunConfig& config,
                                 std::uint64_t seed) {
    config.validate();
    RunOutcome out;
    out.seed = seed;
    const auto model = predict::train_prediction_network(data.panel, knockoffs, config.prediction_config(seed));
    out.prediction_loss = model.epoch_loss.empty() ? model.initial_loss : model.epoch_loss.back();
    out.statistics = predict::compute_statistics(model.network);

    const std::span<const double> W(out.statistics.W.data(), static_cast<std::size_t>(out.statistics.W.size()));
    out.knockoff.report = selection::make_selection(W, config.q, false);
    out.knockoff_plus.report = selection::make_selection(W, config.q, true);
    if (data.truth) {
        out.knockoff.metrics = evaluate_against(out.knockoff.report.selected, *data.truth, config.q);
        out.knockoff_plus.metrics = evaluate_against(out.knockoff_plus.report.selected, *data.truth, config.q);
    }
    return out;
}

RunOutcome run_pipeline(const Dataset& data, const RunConfig& config, std::uint64_t seed) {
    config.validate();
    data.panel.validate(true);
    auto generated = knockoff::generate_knockoffs(data.panel, config.knockoff_config(seed));
    const TimeSeriesPanel tilde = knockoff::knockoff_panel(data.panel, generated.subjects);
    RunOutcome out = select_with_knockoffs(data, tilde, config, seed);
    out.autoencoder_loss = generated.model.final_loss();
    out.knockoffs = std::move(generated.subjects);
    return out;
}

MeanMetrics summarize(const std::vector<RunOutcome>& runs, bool plus) {
    MeanMetrics m;
    if (runs.empty()) {
        return m;
    }
    m.evaluated = std::all_of(runs.begin(), runs.end(), [&](const RunOutcome& r) {
        return (plus ? r.knockoff_plus : r.knockoff).metrics.has_value();
    });
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!m.evaluated) {
        m.fdr = m.power = m.mfdr = nan;
    }
    for (const auto& r : runs) {
        const RuleOutcome& rule = plus ? r.knockoff_plus : r.knockoff;
        m.mean_selected += static_cast<double>(rule.report.selected.size());
        if (m.evaluated) {
            m.fdr += rule.metrics->fdp;
            m.power += rule.metrics->tdp;
            m.mfdr += rule.metrics->mfdr_term;
        }
    }
    const double n = static_cast<double>(runs.size());
    m.mean_selected /= n;
    if (m.evaluated) {
        m.fdr /= n;
        m.power /= n;
        m.mfdr /= n;
    }
    return m;
}

RepeatSummary run_repeat(const DataProvider& data, const RunConfig& config) {
    config.validate();
    const auto reps = static_cast<std::size_t>(config.repetitions);
    RepeatSummary summary;
    summary.runs.resize(reps);
    std::vector<std::vector<std::string>> names(reps);

    parallel_for(reps, config.threads, [&](std::size_t r) {
        const std::uint64_t seed = run_seed(config.seed, r);
        const Dataset d = data(seed);
        RunOutcome outcome = run_pipeline(d, config, seed);
        outcome.run = r;
        outcome.knockoffs.clear();
        summary.runs[r] = std::move(outcome);
        names[r] = feature_labels(d.panel);
    });

    for (std::size_t r = 1; r < reps; ++r) {
        if (names[r].size() != names[0].size()) {
            throw DataError("runs disagree on the number of features");
        }
    }
    summary.feature_names = names[0];
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::vector<std::size_t>> sets_plus;
    for (const auto& r : summary.runs) {
        sets.push_back(r.knockoff.report.selected);
        sets_plus.push_back(r.knockoff_plus.report.selected);
    }
    summary.frequency = selection::aggregate_runs(sets, names[0].size());
    summary.frequency_plus = selection::aggregate_runs(sets_plus, names[0].size());
    summary.knockoff = summarize(summary.runs, false);
    summary.knockoff_plus = summarize(summary.runs, true);
    return summary;
}

} // namespace tsko::pipeline
