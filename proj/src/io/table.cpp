#include "tsko/io/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace tsko::io {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, delim)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == delim) {
        out.emplace_back();
    }
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "na";
}

std::optional<double> parse_number(const std::string& cell) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = cell.data() + cell.size();
    if (!cell.empty() && *begin == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

std::optional<std::size_t> RawTable::column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::string format_double(double v) { return fmt::format("{}", v); }

RawTable parse_table(const std::string& text, Delimiter delimiter, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto where = [&](int n) { return source + ":" + std::to_string(n) + ": "; };

    // Header: first non-blank, non-comment line.
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty() && line[0] != '#') {
            break;
        }
        line.clear();
    }
    if (trim(line).empty()) {
        throw DataError(source + ": empty table");
    }
    char delim = ',';
    if (delimiter == Delimiter::tab || (delimiter == Delimiter::automatic && line.find('\t') != std::string::npos)) {
        delim = '\t';
    }
    auto header = split(line, delim);
    for (auto& h : header) {
        h = trim(h);
    }
    if (header.size() < 3 || lower(header[0]) != "subject" || lower(header[1]) != "time") {
        throw DataError(where(line_no) + "missing header row; expected 'subject" + std::string(1, delim) + "time" +
                        std::string(1, delim) + "<feature>...'");
    }

    RawTable table;
    table.columns.assign(header.begin() + 2, header.end());
    {
        std::set<std::string> seen;
        for (const auto& c : table.columns) {
            if (c.empty() || !seen.insert(c).second) {
                throw DataError(where(line_no) + "empty or duplicate column name '" + c + "'");
            }
        }
    }
    const std::size_t width = table.columns.size();

    std::map<std::string, std::size_t> subject_index;
    std::vector<std::map<double, std::vector<double>>> rows;
    std::set<double> all_times;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || line[0] == '#') {
            continue;
        }
        auto cells = split(line, delim);
        if (cells.size() != width + 2) {
            throw DataError(where(line_no) + "expected " + std::to_string(width + 2) + " fields, found " +
                            std::to_string(cells.size()));
        }
        const std::string subject = trim(cells[0]);
        if (subject.empty()) {
            throw DataError(where(line_no) + "empty subject id");
        }
        const auto time = parse_number(trim(cells[1]));
        if (!time || !std::isfinite(*time)) {
            throw DataError(where(line_no) + "time '" + trim(cells[1]) + "' is not a number");
        }
        std::vector<double> values(width);
        std::size_t missing = 0;
        for (std::size_t c = 0; c < width; ++c) {
            const std::string cell = trim(cells[c + 2]);
            if (is_missing(cell)) {
                values[c] = kMissing;
                ++missing;
                continue;
            }
            const auto v = parse_number(cell);
            if (!v || !std::isfinite(*v)) {
                throw DataError(where(line_no) + "column '" + table.columns[c] + "' holds non-numeric value '" +
                                cell + "'");
            }
            values[c] = *v;
        }
        if (missing != 0 && missing != width) {
            throw DataError(where(line_no) + "row is partially missing; mark a whole time point as NA or fill it");
        }
        auto [it, inserted] = subject_index.try_emplace(subject, rows.size());
        if (inserted) {
            table.subject_ids.push_back(subject);
            rows.emplace_back();
        }
        if (!rows[it->second].emplace(*time, std::move(values)).second) {
            throw DataError(where(line_no) + "duplicate row for subject '" + subject + "' at time " +
                            format_double(*time));
        }
        all_times.insert(*time);
    }
    if (rows.empty()) {
        throw DataError(source + ": table has a header but no data rows");
    }

    table.times.assign(all_times.begin(), all_times.end());
    for (const auto& subject_rows : rows) {
        Matrix m = Matrix::Constant(static_cast<Index>(table.times.size()), static_cast<Index>(width), kMissing);
        for (const auto& [time, values] : subject_rows) {
            const auto t = std::lower_bound(table.times.begin(), table.times.end(), time) - table.times.begin();
            for (std::size_t c = 0; c < width; ++c) {
                m(t, static_cast<Index>(c)) = values[c];
            }
        }
        table.values.push_back(std::move(m));
    }
    return table;
}

RawTable load_table(const std::filesystem::path& path, Delimiter delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (delimiter == Delimiter::automatic && (path.extension() == ".tsv" || path.extension() == ".tab")) {
        delimiter = Delimiter::tab;
    }
    return parse_table(ss.str(), delimiter, path.string());
}

void write_panel(const std::filesystem::path& path, const TimeSeriesPanel& panel, const std::string& response_name) {
    panel.validate();
    TimeSeriesPanel labelled = panel;
    label_defaults(labelled);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    out << "subject,time";
    if (panel.has_response()) {
        out << ',' << response_name;
    }
    for (const auto& f : labelled.feature_names) {
        out << ',' << f;
    }
    out << '\n';
    for (Index i = 0; i < labelled.subjects(); ++i) {
        for (Index t = 0; t < labelled.time_points(); ++t) {
            out << labelled.subject_ids[static_cast<std::size_t>(i)] << ','
                << format_double(labelled.times[static_cast<std::size_t>(t)]);
            if (panel.has_response()) {
                out << ',' << format_double(panel.y[static_cast<std::size_t>(i)][t]);
            }
            for (Index k = 0; k < labelled.features(); ++k) {
                out << ',' << format_double(panel.X[static_cast<std::size_t>(i)](t, k));
            }
            out << '\n';
        }
    }
}

TimeSeriesPanel table_to_panel(const RawTable& table, const std::optional<std::string>& response) {
    std::optional<std::size_t> response_col;
    if (response) {
        response_col = table.column(*response);
        if (!response_col) {
            throw DataError("response column '" + *response + "' not found");
        }
    }
    TimeSeriesPanel panel;
    panel.subject_ids = table.subject_ids;
    panel.times = table.times;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c != response_col) {
            panel.feature_names.push_back(table.columns[c]);
        }
    }
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        const Matrix& v = table.values[i];
        if (!v.allFinite()) {
            throw DataError("subject '" + table.subject_ids[i] + "' has missing time points; filter and impute first");
        }
        Matrix X(v.rows(), static_cast<Index>(panel.feature_names.size()));
        Index k = 0;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c != response_col) {
                X.col(k++) = v.col(static_cast<Index>(c));
            }
        }
        panel.X.push_back(std::move(X));
        if (response_col) {
            panel.y.push_back(v.col(static_cast<Index>(*response_col)));
        }
    }
    panel.validate();
    return panel;
}

TimeSeriesPanel load_panel(const std::filesystem::path& path, const std::optional<std::string>& response) {
    return table_to_panel(load_table(path), response);
}

} // namespace tsko::io
