#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsko/io/table.hpp"
#include "tsko/panel.hpp"

namespace tsko::io {

struct IngestConfig {
    /// Subjects missing more than this fraction of time points are dropped.
    double sample_missing_threshold = 0.5;
    /// Features absent (zero) in more than this fraction of samples are dropped.
    double feature_absence_threshold = 0.9;
    /// Added to every count before taking logs.
    double pseudocount = 0.5;
    /// Column holding the response; it is never filtered out.
    std::optional<std::string> response_feature;
    /// Apply CLR to the features and the modified CLR to the response.
    bool clr = true;

    void validate() const;
};

/// Thresholds used for the longitudinal infant gut cohort.
IngestConfig early_infant_preset(const std::string& response_genus);

/// ln(x_i + c) minus the mean of ln(x_j + c) over the D parts.
Vector clr_transform(const Vector& counts, double pseudocount);

/// ln(y + c) minus the mean log of the explanatory parts only, so the
/// response is not folded into its own reference.
double modified_clr_response(double y_count, const Vector& explanatory_counts, double pseudocount);

struct FilterReport {
    std::vector<std::string> dropped_subjects;
    std::vector<std::string> dropped_features;
    std::size_t dropped_time_points = 0;
};

/// Drops sparse subjects, then features absent in too many of the remaining
/// samples, then time points no remaining subject observed. Idempotent.
RawTable filter_missing(const RawTable& table, const IngestConfig& config, FilterReport* report = nullptr);

/// Fills missing time points per subject and column: linear interpolation
/// in time between observed neighbours, nearest observed value at the ends.
/// Subjects with no observed time point raise DataError.
RawTable impute_missing(const RawTable& table);

/// filter_missing, then the (modified) CLR transform of observed rows, then
/// imputation, then assembly into a panel.
TimeSeriesPanel ingest(const RawTable& table, const IngestConfig& config, FilterReport* report = nullptr);

} // namespace tsko::io
