#include "tsko/io/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tsko/errors.hpp"

namespace tsko::io {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') {
            cell.pop_back();
        }
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_value(const std::string& cell, const std::string& where) {
    if (cell == "inf") {
        return selection::kInfinity;
    }
    if (cell == "NA") {
        return std::nan("");
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw DataError(where + ": '" + cell + "' is not a number");
    }
    return v;
}

template <typename T>
T parse_integer(const std::string& cell, const std::string& where) {
    T v{};
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw DataError(where + ": '" + cell + "' is not a non-negative integer");
    }
    return v;
}

std::optional<double> parse_optional(const std::string& cell, const std::string& where) {
    if (cell == "NA") {
        return std::nullopt;
    }
    return parse_value(cell, where);
}

const std::string& name_of(const std::vector<std::string>& names, std::size_t j) {
    if (j >= names.size()) {
        throw ShapeError("feature index " + std::to_string(j) + " has no name");
    }
    return names[j];
}

} // namespace

std::string format_value(double v) {
    if (std::isnan(v)) {
        return "NA";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return fmt::format("{}", v);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_value(*v) : "NA"; }

void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows) {
    auto out = open_for_writing(path);
    out << "run,seed,rule,threshold,selected,fdp,tdp,mfdr_term\n";
    for (const auto& r : rows) {
        out << r.run << ',' << r.seed << ',' << r.rule << ',' << format_value(r.threshold) << ',' << r.selected << ','
            << format_optional(r.fdp) << ',' << format_optional(r.tdp) << ',' << format_optional(r.mfdr_term) << '\n';
    }
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::size_t run = t.column("run");
    const std::size_t seed = t.column("seed");
    const std::size_t rule = t.column("rule");
    const std::size_t threshold = t.column("threshold");
    const std::size_t selected = t.column("selected");
    const std::size_t fdp = t.column("fdp");
    const std::size_t tdp = t.column("tdp");
    const std::size_t mfdr = t.column("mfdr_term");
    std::vector<MetricsRow> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& c = t.rows[i];
        const std::string where = path.string() + ":" + std::to_string(i + 2);
        MetricsRow r;
        r.run = parse_integer<std::size_t>(c[run], where);
        r.seed = parse_integer<std::uint64_t>(c[seed], where);
        r.rule = c[rule];
        r.threshold = parse_value(c[threshold], where);
        r.selected = parse_integer<std::size_t>(c[selected], where);
        r.fdp = parse_optional(c[fdp], where);
        r.tdp = parse_optional(c[tdp], where);
        r.mfdr_term = parse_optional(c[mfdr], where);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_statistics_csv(const std::filesystem::path& path, const std::vector<std::string>& names, const Vector& Z,
                          const Vector& Z_tilde, const Vector& W) {
    const auto p = static_cast<Index>(names.size());
    if (Z.size() != p || Z_tilde.size() != p || W.size() != p) {
        throw ShapeError("statistics vectors must have one entry per feature name");
    }
    auto out = open_for_writing(path);
    out << "feature,Z,Z_tilde,W\n";
    for (Index j = 0; j < p; ++j) {
        out << names[static_cast<std::size_t>(j)] << ',' << format_value(Z[j]) << ',' << format_value(Z_tilde[j])
            << ',' << format_value(W[j]) << '\n';
    }
}

void write_selection_csv(const std::filesystem::path& path, const selection::SelectionReport& report,
                         const std::vector<std::string>& names) {
    auto out = open_for_writing(path);
    out << "feature,index,W\n";
    for (auto j : report.selected) {
        out << name_of(names, j) << ',' << j << ',' << format_value(report.W.at(j)) << '\n';
    }
}

void write_frequency_csv(const std::filesystem::path& path, const selection::FrequencyReport& report,
                         const std::vector<std::string>& names) {
    auto out = open_for_writing(path);
    out << "feature,count,frequency\n";
    for (auto j : report.order) {
        const double freq = report.runs == 0 ? 0.0 : static_cast<double>(report.counts[j]) /
                                                         static_cast<double>(report.runs);
        out << name_of(names, j) << ',' << report.counts[j] << ',' << format_value(freq) << '\n';
    }
}

std::vector<FrequencyRow> read_frequency_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::size_t feature = t.column("feature");
    const std::size_t count = t.column("count");
    std::vector<FrequencyRow> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string where = path.string() + ":" + std::to_string(i + 2);
        rows.push_back({t.rows[i][feature], parse_integer<std::size_t>(t.rows[i][count], where)});
    }
    return rows;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == name) {
            return c;
        }
    }
    throw DataError("column '" + name + "' not found");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(path.string() + ": missing header row");
    }
    t.header = split_commas(line);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        auto cells = split_commas(line);
        if (cells.size() != t.header.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(t.header.size()) + " fields, found " + std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

} // namespace tsko::io
