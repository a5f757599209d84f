#include "tsko/pipeline/sweep.hpp"

#include <cmath>
#include <limits>

#include "tsko/errors.hpp"
#include "tsko/pipeline/worker_pool.hpp"

namespace tsko::pipeline {

namespace {

long long whole(const std::string& name, double v) {
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e15) {
        throw ConfigError("sweep axis '" + name + "' needs whole numbers, got " + std::to_string(v));
    }
    return static_cast<long long>(v);
}

} // namespace

const SweepCell& SweepResult::at(std::size_t r, std::size_t c) const {
    const std::size_t width = cols ? cols->values.size() : 1;
    return cells.at(r * width + c);
}

void apply_axis(const std::string& name, double value, RunConfig& run, sim::SimConfig& sim) {
    if (name == "epochs") {
        run.epochs_autoencoder = run.epochs_prediction = static_cast<int>(whole(name, value));
    } else if (name == "epochs_autoencoder") {
        run.epochs_autoencoder = static_cast<int>(whole(name, value));
    } else if (name == "epochs_prediction") {
        run.epochs_prediction = static_cast<int>(whole(name, value));
    } else if (name == "bottleneck") {
        run.bottleneck = whole(name, value);
    } else if (name == "A") {
        sim.A = value;
    } else if (name == "p") {
        sim.p = whole(name, value);
    } else if (name == "n") {
        sim.n = whole(name, value);
    } else if (name == "m") {
        sim.m = whole(name, value);
    } else if (name == "s") {
        sim.s = whole(name, value);
    } else {
        throw ConfigError("unknown sweep axis '" + name + "'");
    }
}

SweepResult run_sweep(const sim::SimConfig& base, const RunConfig& config, const SweepAxis& rows,
                      const std::optional<SweepAxis>& cols) {
    config.validate();
    if (rows.values.empty() || (cols && cols->values.empty())) {
        throw ConfigError("sweep axes need at least one value");
    }
    const std::size_t width = cols ? cols->values.size() : 1;
    const std::size_t n_cells = rows.values.size() * width;
    const auto reps = static_cast<std::size_t>(config.repetitions);

    std::vector<RunConfig> run_configs(n_cells, config);
    std::vector<sim::SimConfig> sim_configs(n_cells, base);
    SweepResult result{rows, cols, std::vector<SweepCell>(n_cells), config.repetitions};
    for (std::size_t r = 0; r < rows.values.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const std::size_t k = r * width + c;
            apply_axis(rows.name, rows.values[r], run_configs[k], sim_configs[k]);
            result.cells[k].row_value = rows.values[r];
            if (cols) {
                apply_axis(cols->name, cols->values[c], run_configs[k], sim_configs[k]);
                result.cells[k].col_value = cols->values[c];
            }
            run_configs[k].validate();
            sim_configs[k].validate();
        }
    }

    std::vector<RunOutcome> outcomes(n_cells * reps);
    parallel_for(outcomes.size(), config.threads, [&](std::size_t job) {
        const std::size_t k = job / reps;
        const std::size_t r = job % reps;
        const std::uint64_t seed = run_seed(config.seed, r);
        RunOutcome o = run_pipeline(simulate_for_run(sim_configs[k], seed), run_configs[k], seed);
        o.run = r;
        o.knockoffs.clear();
        outcomes[job] = std::move(o);
    });

    for (std::size_t k = 0; k < n_cells; ++k) {
        const std::vector<RunOutcome> cell(outcomes.begin() + static_cast<std::ptrdiff_t>(k * reps),
                                           outcomes.begin() + static_cast<std::ptrdiff_t>((k + 1) * reps));
        result.cells[k].knockoff = summarize(cell, false);
        result.cells[k].knockoff_plus = summarize(cell, true);
    }
    return result;
}

} // namespace tsko::pipeline
