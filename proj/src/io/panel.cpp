#include "tsko/panel.hpp"

#include <string>

namespace tsko {

void TimeSeriesPanel::validate(bool require_response) const {
    if (X.empty()) {
        throw DataError("panel has no subjects");
    }
    const Index n = time_points();
    const Index p = features();
    if (n < 1 || p < 1) {
        throw DataError("panel needs at least one time point and one feature");
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (X[i].rows() != n || X[i].cols() != p) {
            throw DataError("subject " + std::to_string(i) + " is not " + std::to_string(n) + "x" + std::to_string(p));
        }
        if (!X[i].allFinite()) {
            throw DataError("subject " + std::to_string(i) + " has non-finite feature values");
        }
    }
    if (require_response && y.empty()) {
        throw DataError("panel has no response");
    }
    if (!y.empty()) {
        if (y.size() != X.size()) {
            throw DataError("response present for " + std::to_string(y.size()) + " of " + std::to_string(X.size()) +
                            " subjects");
        }
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i].size() != n) {
                throw DataError("response of subject " + std::to_string(i) + " has wrong length");
            }
            if (!y[i].allFinite()) {
                throw DataError("response of subject " + std::to_string(i) + " has non-finite values");
            }
        }
    }
    if (!subject_ids.empty() && subject_ids.size() != X.size()) {
        throw DataError("subject id count does not match subject count");
    }
    if (!feature_names.empty() && static_cast<Index>(feature_names.size()) != p) {
        throw DataError("feature name count does not match feature count");
    }
    if (!times.empty() && static_cast<Index>(times.size()) != n) {
        throw DataError("time label count does not match time point count");
    }
}

void label_defaults(TimeSeriesPanel& panel) {
    if (panel.subject_ids.empty()) {
        for (Index i = 0; i < panel.subjects(); ++i) {
            panel.subject_ids.push_back("s" + std::to_string(i + 1));
        }
    }
    if (panel.feature_names.empty()) {
        for (Index j = 0; j < panel.features(); ++j) {
            panel.feature_names.push_back("x" + std::to_string(j + 1));
        }
    }
    if (panel.times.empty()) {
        for (Index t = 0; t < panel.time_points(); ++t) {
            panel.times.push_back(static_cast<double>(t));
        }
    }
}

std::vector<std::string> feature_labels(const TimeSeriesPanel& panel) {
    if (!panel.feature_names.empty()) {
        return panel.feature_names;
    }
    std::vector<std::string> names;
    for (Index j = 0; j < panel.features(); ++j) {
        names.push_back("x" + std::to_string(j + 1));
    }
    return names;
}

} // namespace tsko
