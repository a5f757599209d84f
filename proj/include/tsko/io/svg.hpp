#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsko/panel.hpp"

namespace tsko::io {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Axes {
    std::string title;
    std::string x_label;
    std::string y_label;
    /// Fixed y range; derived from the data when absent.
    std::optional<std::pair<double, double>> y_range;
};

/// Standalone SVG documents. Output depends only on the arguments, so equal
/// inputs give byte-identical files.
std::string line_chart(const Axes& axes, const std::vector<Series>& series);
std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<double>& values);

/// values is rows x cols; each cell is annotated with its value.
std::string heatmap(const Axes& axes, const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const Matrix& values, double lo, double hi);

void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace tsko::io
