#include "tsko/pipeline/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "tsko/errors.hpp"
#include "tsko/io/svg.hpp"

namespace tsko::pipeline {

namespace fs = std::filesystem;

namespace {

io::MetricsRow rule_row(const RunOutcome& o, const RuleOutcome& rule, const char* name) {
    io::MetricsRow row;
    row.run = o.run;
    row.seed = o.seed;
    row.rule = name;
    row.threshold = rule.report.threshold;
    row.selected = rule.report.selected.size();
    if (rule.metrics) {
        row.fdp = rule.metrics->fdp;
        if (std::isfinite(rule.metrics->tdp)) {
            row.tdp = rule.metrics->tdp;
        }
        row.mfdr_term = rule.metrics->mfdr_term;
    }
    return row;
}

std::string axis_label(double v) { return io::format_value(v); }

std::vector<double> values_of(const std::vector<SweepCell>& cells, std::size_t first, std::size_t stride,
                              std::size_t count, double MeanMetrics::*field, bool plus) {
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        const SweepCell& c = cells[first + i * stride];
        out.push_back((plus ? c.knockoff_plus : c.knockoff).*field);
    }
    return out;
}

} // namespace

std::vector<io::MetricsRow> metrics_rows(const RunOutcome& outcome) {
    return {rule_row(outcome, outcome.knockoff, "knockoff"), rule_row(outcome, outcome.knockoff_plus, "knockoff+")};
}

std::string knockoff_file_name(const std::string& subject_id) {
    std::string safe;
    for (char c : subject_id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        safe += ok ? c : '_';
    }
    return "knockoff_" + safe + ".csv";
}

void write_knockoff_dir(const fs::path& dir, const std::vector<knockoff::KnockoffResult>& knockoffs,
                        const TimeSeriesPanel& panel) {
    TimeSeriesPanel labelled = panel;
    label_defaults(labelled);
    if (knockoffs.size() != labelled.subject_ids.size()) {
        throw ShapeError("one knockoff result per subject expected");
    }
    fs::create_directories(dir);
    std::set<std::string> used;
    for (std::size_t i = 0; i < knockoffs.size(); ++i) {
        const std::string name = knockoff_file_name(labelled.subject_ids[i]);
        if (!used.insert(name).second) {
            throw DataError("subject ids '" + labelled.subject_ids[i] + "' collide after file name sanitising");
        }
        knockoff::write_knockoff_file(dir / name, knockoffs[i], labelled.feature_names);
    }
}

TimeSeriesPanel read_knockoff_dir(const fs::path& dir, const TimeSeriesPanel& panel) {
    TimeSeriesPanel labelled = panel;
    label_defaults(labelled);
    std::vector<knockoff::KnockoffResult> results;
    for (const auto& id : labelled.subject_ids) {
        std::vector<std::string> names;
        auto r = knockoff::read_knockoff_file(dir / knockoff_file_name(id), &names);
        if (names != labelled.feature_names) {
            throw DataError("knockoff file for subject '" + id + "' has different feature columns");
        }
        if (r.X_tilde.rows() != labelled.time_points()) {
            throw DataError("knockoff file for subject '" + id + "' has " + std::to_string(r.X_tilde.rows()) +
                            " rows, expected " + std::to_string(labelled.time_points()));
        }
        results.push_back(std::move(r));
    }
    return knockoff::knockoff_panel(panel, results);
}

std::vector<std::string> write_run_artifacts(const fs::path& dir, const RunOutcome& outcome,
                                             const std::vector<std::string>& feature_names) {
    fs::create_directories(dir);
    const auto& st = outcome.statistics;
    io::write_statistics_csv(dir / "statistics.csv", feature_names, st.Z, st.Z_tilde, st.W);
    io::write_selection_csv(dir / "selected_knockoff.csv", outcome.knockoff.report, feature_names);
    io::write_selection_csv(dir / "selected_knockoff_plus.csv", outcome.knockoff_plus.report, feature_names);
    io::write_metrics_csv(dir / "metrics.csv", metrics_rows(outcome));

    const std::vector<double> W(st.W.data(), st.W.data() + st.W.size());
    io::Axes axes{fmt::format("Knockoff statistics (knockoff+ threshold {})",
                              io::format_value(outcome.knockoff_plus.report.threshold)),
                  "feature", "W", std::nullopt};
    io::write_text(dir / "statistics.svg", io::bar_chart(axes, feature_names, W));
    return {"statistics.csv", "selected_knockoff.csv", "selected_knockoff_plus.csv", "metrics.csv", "statistics.svg"};
}

void write_summary_csv(const fs::path& path, std::size_t runs, const MeanMetrics& knockoff,
                       const MeanMetrics& knockoff_plus) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    out << "rule,runs,fdr,power,mfdr,mean_selected\n";
    for (const auto& [name, m] : {std::pair{"knockoff", &knockoff}, std::pair{"knockoff+", &knockoff_plus}}) {
        out << name << ',' << runs << ',' << io::format_value(m->fdr) << ',' << io::format_value(m->power) << ','
            << io::format_value(m->mfdr) << ',' << io::format_value(m->mean_selected) << '\n';
    }
}

std::vector<std::string> write_repeat_artifacts(const fs::path& dir, const RepeatSummary& summary) {
    fs::create_directories(dir);
    std::vector<io::MetricsRow> rows;
    for (const auto& r : summary.runs) {
        for (auto& row : metrics_rows(r)) {
            rows.push_back(std::move(row));
        }
    }
    io::write_metrics_csv(dir / "metrics.csv", rows);
    io::write_frequency_csv(dir / "frequencies_knockoff.csv", summary.frequency, summary.feature_names);
    io::write_frequency_csv(dir / "frequencies_knockoff_plus.csv", summary.frequency_plus, summary.feature_names);
    write_summary_csv(dir / "summary.csv", summary.runs.size(), summary.knockoff, summary.knockoff_plus);

    const auto& freq = summary.frequency_plus;
    const std::size_t bins = freq.histogram.size();
    std::vector<std::string> bin_labels;
    std::vector<double> bin_counts;
    for (std::size_t b = 0; b < bins; ++b) {
        bin_labels.push_back(fmt::format("{:.2f}-{:.2f}", static_cast<double>(b) / static_cast<double>(bins),
                                         static_cast<double>(b + 1) / static_cast<double>(bins)));
        bin_counts.push_back(static_cast<double>(freq.histogram[b]));
    }
    io::write_text(dir / "frequency_histogram.svg",
                   io::bar_chart({"Selection frequency (knockoff+)", "frequency", "features", std::nullopt},
                                 bin_labels, bin_counts));

    std::vector<std::string> top_names;
    std::vector<double> top_counts;
    for (std::size_t i = 0; i < std::min<std::size_t>(20, freq.order.size()); ++i) {
        top_names.push_back(summary.feature_names[freq.order[i]]);
        top_counts.push_back(static_cast<double>(freq.counts[freq.order[i]]));
    }
    io::write_text(dir / "top_features.svg",
                   io::bar_chart({"Most frequently selected features (knockoff+)", "feature", "runs selected",
                                  std::pair{0.0, static_cast<double>(std::max<std::size_t>(freq.runs, 1))}},
                                 top_names, top_counts));
    return {"metrics.csv", "frequencies_knockoff.csv", "frequencies_knockoff_plus.csv", "summary.csv",
            "frequency_histogram.svg", "top_features.svg"};
}

std::vector<std::string> write_sweep_artifacts(const fs::path& dir, const SweepResult& result) {
    fs::create_directories(dir);
    const std::string col_name = result.cols ? result.cols->name : "";
    {
        std::ofstream out(dir / "sweep.csv", std::ios::binary);
        if (!out) {
            throw DataError("cannot open " + (dir / "sweep.csv").string() + " for writing");
        }
        out << result.rows.name << ',';
        if (result.cols) {
            out << col_name << ',';
        }
        out << "rule,runs,fdr,power,mfdr,mean_selected\n";
        for (const auto& c : result.cells) {
            for (const auto& [rule, m] : {std::pair{"knockoff", &c.knockoff}, std::pair{"knockoff+", &c.knockoff_plus}}) {
                out << io::format_value(c.row_value) << ',';
                if (result.cols) {
                    out << io::format_value(c.col_value) << ',';
                }
                out << rule << ',' << result.repetitions << ',' << io::format_value(m->fdr) << ','
                    << io::format_value(m->power) << ',' << io::format_value(m->mfdr) << ','
                    << io::format_value(m->mean_selected) << '\n';
            }
        }
    }
    std::vector<std::string> written{"sweep.csv"};
    const std::size_t n_rows = result.rows.values.size();

    if (result.cols) {
        const std::size_t n_cols = result.cols->values.size();
        std::vector<std::string> row_labels;
        std::vector<std::string> col_labels;
        for (double v : result.rows.values) {
            row_labels.push_back(axis_label(v));
        }
        for (double v : result.cols->values) {
            col_labels.push_back(axis_label(v));
        }
        struct Panel {
            const char* file;
            const char* title;
            double MeanMetrics::*field;
            bool plus;
        };
        const Panel panels[] = {{"fdr_plus.svg", "FDR+", &MeanMetrics::fdr, true},
                                {"power_plus.svg", "Power+", &MeanMetrics::power, true},
                                {"fdr.svg", "FDR", &MeanMetrics::fdr, false},
                                {"power.svg", "Power", &MeanMetrics::power, false}};
        for (const auto& p : panels) {
            Matrix grid(static_cast<Index>(n_rows), static_cast<Index>(n_cols));
            for (std::size_t r = 0; r < n_rows; ++r) {
                for (std::size_t c = 0; c < n_cols; ++c) {
                    const SweepCell& cell = result.at(r, c);
                    grid(static_cast<Index>(r), static_cast<Index>(c)) =
                        (p.plus ? cell.knockoff_plus : cell.knockoff).*(p.field);
                }
            }
            io::write_text(dir / p.file, io::heatmap({p.title, col_name, result.rows.name, std::nullopt}, row_labels,
                                                     col_labels, grid, 0.0, 1.0));
            written.emplace_back(p.file);
        }
    } else {
        std::vector<io::Series> series;
        series.push_back({"Power+", result.rows.values,
                          values_of(result.cells, 0, 1, n_rows, &MeanMetrics::power, true)});
        series.push_back({"FDR+", result.rows.values, values_of(result.cells, 0, 1, n_rows, &MeanMetrics::fdr, true)});
        series.push_back({"Power", result.rows.values,
                          values_of(result.cells, 0, 1, n_rows, &MeanMetrics::power, false)});
        series.push_back({"FDR", result.rows.values, values_of(result.cells, 0, 1, n_rows, &MeanMetrics::fdr, false)});
        io::write_text(dir / "sweep.svg",
                       io::line_chart({"FDR and power", result.rows.name, "rate", std::pair{0.0, 1.0}}, series));
        written.emplace_back("sweep.svg");
    }
    return written;
}

nlohmann::json to_json(const Manifest& manifest) {
    nlohmann::json j;
    j["tool"] = "tsko";
    j["command"] = manifest.command;
    j["options"] = manifest.options;
    j["run_seeds"] = manifest.run_seeds;
    j["outputs"] = manifest.outputs;
    return j;
}

void write_manifest(const fs::path& path, const Manifest& manifest) {
    io::write_text(path, to_json(manifest).dump(2) + "\n");
}

} // namespace tsko::pipeline
