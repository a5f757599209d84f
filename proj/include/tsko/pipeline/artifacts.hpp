#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsko/io/report.hpp"
#include "tsko/pipeline/pipeline.hpp"
#include "tsko/pipeline/sweep.hpp"

namespace tsko::pipeline {

/// Both rules of one run as metrics rows; fdp/tdp are NA without a truth.
std::vector<io::MetricsRow> metrics_rows(const RunOutcome& outcome);

/// File name of a subject's knockoffs inside a knockoff directory.
std::string knockoff_file_name(const std::string& subject_id);

void write_knockoff_dir(const std::filesystem::path& dir, const std::vector<knockoff::KnockoffResult>& knockoffs,
                        const TimeSeriesPanel& panel);

/// Knockoff panel for `panel` from files written by write_knockoff_dir.
/// Feature names and shapes must match.
TimeSeriesPanel read_knockoff_dir(const std::filesystem::path& dir, const TimeSeriesPanel& panel);

/// statistics.csv, selected_knockoff.csv, selected_knockoff_plus.csv,
/// metrics.csv and statistics.svg. Returns the written file names.
std::vector<std::string> write_run_artifacts(const std::filesystem::path& dir, const RunOutcome& outcome,
                                             const std::vector<std::string>& feature_names);

/// metrics.csv, frequencies_knockoff.csv, frequencies_knockoff_plus.csv,
/// summary.csv, frequency_histogram.svg and top_features.svg.
std::vector<std::string> write_repeat_artifacts(const std::filesystem::path& dir, const RepeatSummary& summary);

/// sweep.csv plus heatmaps (two axes) or line plots (one axis).
std::vector<std::string> write_sweep_artifacts(const std::filesystem::path& dir, const SweepResult& result);

/// summary.csv columns: rule,runs,fdr,power,mfdr,mean_selected.
void write_summary_csv(const std::filesystem::path& path, std::size_t runs, const MeanMetrics& knockoff,
                       const MeanMetrics& knockoff_plus);

/// Provenance record of one command invocation. Feeding `options` back as a
/// config file reproduces the run.
struct Manifest {
    std::string command;
    nlohmann::json options = nlohmann::json::object();
    std::vector<std::uint64_t> run_seeds;
    std::vector<std::string> outputs;
};

nlohmann::json to_json(const Manifest& manifest);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

} // namespace tsko::pipeline
