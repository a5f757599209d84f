#include "tsko/io/compositional.hpp"

#include <cmath>

namespace tsko::io {

namespace {

bool row_missing(const Matrix& values, Index t) { return std::isnan(values(t, 0)); }

} // namespace

void IngestConfig::validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(sample_missing_threshold) || !in_unit(feature_absence_threshold)) {
        throw ConfigError("filter thresholds must lie in [0, 1]");
    }
    if (clr && !(pseudocount > 0.0)) {
        throw ConfigError("pseudocount must be positive");
    }
}

IngestConfig early_infant_preset(const std::string& response_genus) {
    IngestConfig c;
    c.sample_missing_threshold = 0.5;
    c.feature_absence_threshold = 0.9;
    c.response_feature = response_genus;
    return c;
}

Vector clr_transform(const Vector& counts, double pseudocount) {
    if (counts.size() == 0) {
        throw DataError("CLR needs at least one part");
    }
    if ((counts.array() < 0.0).any()) {
        throw DataError("counts must be non-negative");
    }
    const Vector shifted = (counts.array() + pseudocount).matrix();
    if ((shifted.array() <= 0.0).any()) {
        throw DataError("zero count with zero pseudocount has no logarithm");
    }
    const Vector logs = shifted.array().log().matrix();
    return (logs.array() - logs.mean()).matrix();
}

double modified_clr_response(double y_count, const Vector& explanatory_counts, double pseudocount) {
    if (explanatory_counts.size() == 0) {
        throw DataError("modified CLR needs at least one explanatory part");
    }
    if (y_count < 0.0 || (explanatory_counts.array() < 0.0).any()) {
        throw DataError("counts must be non-negative");
    }
    if (y_count + pseudocount <= 0.0 || ((explanatory_counts.array() + pseudocount) <= 0.0).any()) {
        throw DataError("zero count with zero pseudocount has no logarithm");
    }
    const double reference = (explanatory_counts.array() + pseudocount).log().mean();
    return std::log(y_count + pseudocount) - reference;
}

RawTable filter_missing(const RawTable& table, const IngestConfig& config, FilterReport* report) {
    config.validate();
    FilterReport local;
    FilterReport& rep = report != nullptr ? *report : local;
    rep = FilterReport{};

    const auto n = static_cast<Index>(table.times.size());
    std::vector<std::size_t> keep_subjects;
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        Index missing = 0;
        for (Index t = 0; t < n; ++t) {
            missing += row_missing(table.values[i], t) ? 1 : 0;
        }
        const double fraction = n == 0 ? 1.0 : static_cast<double>(missing) / static_cast<double>(n);
        if (fraction > config.sample_missing_threshold) {
            rep.dropped_subjects.push_back(table.subject_ids[i]);
        } else {
            keep_subjects.push_back(i);
        }
    }
    if (keep_subjects.empty()) {
        throw DataError("every subject exceeds the missing time point threshold");
    }

    const auto response_col = config.response_feature ? table.column(*config.response_feature) : std::nullopt;
    if (config.response_feature && !response_col) {
        throw DataError("response column '" + *config.response_feature + "' not found");
    }

    std::vector<std::size_t> keep_columns;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c == response_col) {
            keep_columns.push_back(c);
            continue;
        }
        std::size_t samples = 0;
        std::size_t absent = 0;
        for (auto i : keep_subjects) {
            for (Index t = 0; t < n; ++t) {
                if (row_missing(table.values[i], t)) {
                    continue;
                }
                ++samples;
                absent += table.values[i](t, static_cast<Index>(c)) == 0.0 ? 1 : 0;
            }
        }
        const double fraction = samples == 0 ? 1.0 : static_cast<double>(absent) / static_cast<double>(samples);
        if (fraction > config.feature_absence_threshold) {
            rep.dropped_features.push_back(table.columns[c]);
        } else {
            keep_columns.push_back(c);
        }
    }

    if (keep_columns.empty() || (response_col && keep_columns.size() == 1)) {
        throw DataError("every feature exceeds the absence threshold");
    }

    std::vector<Index> keep_times;
    for (Index t = 0; t < n; ++t) {
        bool observed = false;
        for (auto i : keep_subjects) {
            observed = observed || !row_missing(table.values[i], t);
        }
        if (observed) {
            keep_times.push_back(t);
        } else {
            ++rep.dropped_time_points;
        }
    }

    RawTable out;
    for (auto c : keep_columns) {
        out.columns.push_back(table.columns[c]);
    }
    for (auto t : keep_times) {
        out.times.push_back(table.times[static_cast<std::size_t>(t)]);
    }
    for (auto i : keep_subjects) {
        out.subject_ids.push_back(table.subject_ids[i]);
        Matrix m(static_cast<Index>(keep_times.size()), static_cast<Index>(keep_columns.size()));
        for (std::size_t r = 0; r < keep_times.size(); ++r) {
            for (std::size_t c = 0; c < keep_columns.size(); ++c) {
                m(static_cast<Index>(r), static_cast<Index>(c)) =
                    table.values[i](keep_times[r], static_cast<Index>(keep_columns[c]));
            }
        }
        out.values.push_back(std::move(m));
    }
    return out;
}

RawTable impute_missing(const RawTable& table) {
    RawTable out = table;
    const auto n = static_cast<Index>(table.times.size());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        Matrix& v = out.values[i];
        std::vector<Index> observed;
        for (Index t = 0; t < n; ++t) {
            if (!row_missing(v, t)) {
                observed.push_back(t);
            }
        }
        if (observed.empty()) {
            throw DataError("subject '" + table.subject_ids[i] + "' has no observed time point");
        }
        std::size_t next = 0;
        for (Index t = 0; t < n; ++t) {
            while (next < observed.size() && observed[next] < t) {
                ++next;
            }
            if (next < observed.size() && observed[next] == t) {
                continue;
            }
            if (next == 0) {
                v.row(t) = v.row(observed.front());
            } else if (next == observed.size()) {
                v.row(t) = v.row(observed.back());
            } else {
                const Index lo = observed[next - 1];
                const Index hi = observed[next];
                const double t0 = table.times[static_cast<std::size_t>(lo)];
                const double t1 = table.times[static_cast<std::size_t>(hi)];
                const double w = (table.times[static_cast<std::size_t>(t)] - t0) / (t1 - t0);
                v.row(t) = (1.0 - w) * v.row(lo) + w * v.row(hi);
            }
        }
    }
    return out;
}

TimeSeriesPanel ingest(const RawTable& table, const IngestConfig& config, FilterReport* report) {
    RawTable filtered = filter_missing(table, config, report);
    const auto response_col = config.response_feature ? filtered.column(*config.response_feature) : std::nullopt;

    if (config.clr) {
        const auto width = static_cast<Index>(filtered.columns.size());
        for (auto& v : filtered.values) {
            for (Index t = 0; t < v.rows(); ++t) {
                if (row_missing(v, t)) {
                    continue;
                }
                Vector explanatory(response_col ? width - 1 : width);
                Index k = 0;
                for (Index c = 0; c < width; ++c) {
                    if (static_cast<std::size_t>(c) != response_col) {
                        explanatory[k++] = v(t, c);
                    }
                }
                const Vector transformed = clr_transform(explanatory, config.pseudocount);
                if (response_col) {
                    v(t, static_cast<Index>(*response_col)) =
                        modified_clr_response(v(t, static_cast<Index>(*response_col)), explanatory, config.pseudocount);
                }
                k = 0;
                for (Index c = 0; c < width; ++c) {
                    if (static_cast<std::size_t>(c) != response_col) {
                        v(t, c) = transformed[k++];
                    }
                }
            }
        }
    }
    return table_to_panel(impute_missing(filtered), config.response_feature);
}

} // namespace tsko::io
