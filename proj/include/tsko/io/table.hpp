#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsko/panel.hpp"

namespace tsko::io {

/**
 * Long-form table: one row per (subject, time) key, one column per feature.
 *
 * Cells may hold "NA" or be empty; a row whose every value is missing marks
 * an unobserved time point. Partially missing rows are rejected.
 */
struct RawTable {
    std::vector<std::string> columns;      // value columns, header order
    std::vector<std::string> subject_ids;  // first-seen order
    std::vector<double> times;             // ascending union over subjects
    /// values[subject] is times.size() x columns.size(); NaN marks a missing time point.
    std::vector<Matrix> values;

    Index subjects() const { return static_cast<Index>(values.size()); }
    std::optional<std::size_t> column(const std::string& name) const;
};

enum class Delimiter { automatic, comma, tab };

/// Parses `subject,time,<value columns...>` with a header row. Throws
/// DataError naming the offending line for malformed rows, non-numeric
/// cells and duplicate (subject, time) keys.
RawTable load_table(const std::filesystem::path& path, Delimiter delimiter = Delimiter::automatic);
RawTable parse_table(const std::string& text, Delimiter delimiter = Delimiter::automatic,
                     const std::string& source = "<input>");

/// Writes a panel in the same long form: subject,time[,y],features...
void write_panel(const std::filesystem::path& path, const TimeSeriesPanel& panel,
                 const std::string& response_name = "y");

/// Converts a complete table (no missing time points) into a panel, taking
/// `response` as the response column when given.
TimeSeriesPanel table_to_panel(const RawTable& table, const std::optional<std::string>& response);

/// Loads a file written by write_panel.
TimeSeriesPanel load_panel(const std::filesystem::path& path, const std::optional<std::string>& response = "y");

std::string format_double(double v);

} // namespace tsko::io
