#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsko/panel.hpp"
#include "tsko/selection/selection.hpp"

namespace tsko::io {

/// One line of the per-run metrics table. fdp/tdp are absent when the truth
/// is unknown; tdp is also absent when the truth is empty.
struct MetricsRow {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::string rule;
    double threshold = selection::kInfinity;
    std::size_t selected = 0;
    std::optional<double> fdp;
    std::optional<double> tdp;
    std::optional<double> mfdr_term;
};

/// run,seed,rule,threshold,selected,fdp,tdp,mfdr_term; missing values as NA.
void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

/// feature,Z,Z_tilde,W in feature order.
void write_statistics_csv(const std::filesystem::path& path, const std::vector<std::string>& names, const Vector& Z,
                          const Vector& Z_tilde, const Vector& W);

/// feature,index,W for the selected features, ascending index; header only
/// when nothing was selected.
void write_selection_csv(const std::filesystem::path& path, const selection::SelectionReport& report,
                         const std::vector<std::string>& names);

/// feature,count,frequency sorted by count descending (index ascending on ties).
void write_frequency_csv(const std::filesystem::path& path, const selection::FrequencyReport& report,
                         const std::vector<std::string>& names);

struct FrequencyRow {
    std::string feature;
    std::size_t count = 0;
};
std::vector<FrequencyRow> read_frequency_csv(const std::filesystem::path& path);

/// Plain comma-separated table with a header, no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Shortest round-trip text of v; inf and NaN as "inf" and "NA".
std::string format_value(double v);
std::string format_optional(const std::optional<double>& v);

} // namespace tsko::io
