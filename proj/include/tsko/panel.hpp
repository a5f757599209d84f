#pragma once

#include <string>
#include <vector>

#include "tsko/nn/types.hpp"

namespace tsko {

using nn::Index;
using nn::Matrix;
using nn::Vector;

/// m subjects observed at the same n time points on p features, with an
/// optional response series per subject.
struct TimeSeriesPanel {
    std::vector<std::string> subject_ids;
    std::vector<std::string> feature_names;
    std::vector<double> times;
    std::vector<Matrix> X; // m entries, each n x p
    std::vector<Vector> y; // m entries of length n, or empty

    Index subjects() const { return static_cast<Index>(X.size()); }
    Index time_points() const { return X.empty() ? 0 : X.front().rows(); }
    Index features() const { return X.empty() ? 0 : X.front().cols(); }
    bool has_response() const { return !y.empty(); }

    /// Throws DataError unless the panel is rectangular, labelled and finite.
    void validate(bool require_response = false) const;
};

/// Default labels s1.., x1.., 0..n-1 for an unlabeled panel.
void label_defaults(TimeSeriesPanel& panel);

/// Feature names, or the defaults label_defaults would assign.
std::vector<std::string> feature_labels(const TimeSeriesPanel& panel);

} // namespace tsko
