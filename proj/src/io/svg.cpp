#include "tsko/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "tsko/errors.hpp"

namespace tsko::io {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string tick(double v) {
    if (v == 0.0) {
        return "0";
    }
    const double a = std::abs(v);
    if (a >= 1e4 || a < 1e-3) {
        return fmt::format("{:.2e}", v);
    }
    return fmt::format("{:.4g}", v);
}

struct Range {
    double lo;
    double hi;
};

Range pad(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        return {0.0, 1.0};
    }
    if (lo == hi) {
        const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        return {lo - d, hi + d};
    }
    return {lo, hi};
}

std::string open(const Axes& axes) {
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        kWidth, kHeight);
    s += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     num((kLeft + kWidth - kRight) / 2), escape(axes.title));
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num((kLeft + kWidth - kRight) / 2),
                     num(kHeight - 15), escape(axes.x_label));
    s += fmt::format("<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
                     num((kTop + kHeight - kBottom) / 2), escape(axes.y_label));
    return s;
}

std::string frame_and_y_ticks(Range y) {
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    std::string s = fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                                num(x0), num(kTop), num(x1 - x0), num(y0 - kTop));
    for (int i = 0; i <= 4; ++i) {
        const double v = y.lo + (y.hi - y.lo) * i / 4.0;
        const double py = y0 - (y0 - kTop) * i / 4.0;
        s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#ddd\"/>\n", num(x0), num(py),
                         num(x1));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(x0 - 5), num(py + 4), tick(v));
    }
    return s;
}

} // namespace

std::string line_chart(const Axes& axes, const std::vector<Series>& series) {
    double xlo = std::numeric_limits<double>::infinity();
    double xhi = -xlo;
    double ylo = xlo;
    double yhi = -xlo;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) {
            throw ShapeError("series '" + s.name + "' has mismatched x and y lengths");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            if (std::isfinite(s.y[i])) {
                ylo = std::min(ylo, s.y[i]);
                yhi = std::max(yhi, s.y[i]);
            }
        }
    }
    const Range xr = pad(xlo, xhi);
    const Range yr = axes.y_range ? Range{axes.y_range->first, axes.y_range->second} : pad(ylo, yhi);
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    auto px = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - kTop); };

    std::string s = open(axes) + frame_and_y_ticks(yr);
    for (int i = 0; i <= 4; ++i) {
        const double v = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(px(v)), num(y0 + 16),
                         tick(v));
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& ser = series[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        std::string points;
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            if (!std::isfinite(ser.y[i])) {
                continue;
            }
            points += fmt::format("{}{},{}", points.empty() ? "" : " ", num(px(ser.x[i])), num(py(ser.y[i])));
            s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", num(px(ser.x[i])),
                             num(py(ser.y[i])), colour);
        }
        s += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", points, colour);
        const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
        s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                         num(x1 + 10), num(ly), num(x1 + 30), colour);
        s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", num(x1 + 35), num(ly + 4), escape(ser.name));
    }
    return s + "</svg>\n";
}

std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<double>& values) {
    if (labels.size() != values.size()) {
        throw ShapeError("bar chart needs one label per value");
    }
    double lo = 0.0;
    double hi = 0.0;
    for (double v : values) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const Range yr = axes.y_range ? Range{axes.y_range->first, axes.y_range->second} : pad(lo, hi);
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - kTop); };

    std::string s = open(axes) + frame_and_y_ticks(yr);
    const double slot = values.empty() ? 0.0 : (x1 - x0) / static_cast<double>(values.size());
    // Label at most ~30 bars so dense charts stay legible.
    const std::size_t label_every = std::max<std::size_t>(1, (values.size() + 29) / 30);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = std::isfinite(values[i]) ? values[i] : 0.0;
        const double top = py(std::max(v, 0.0));
        const double bottom = py(std::min(v, 0.0));
        const double x = x0 + slot * static_cast<double>(i);
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", num(x + slot * 0.1),
                         num(top), num(slot * 0.8), num(bottom - top), v < 0.0 ? kPalette[1] : kPalette[0]);
        if (i % label_every == 0) {
            s += fmt::format("<text x=\"{0}\" y=\"{1}\" text-anchor=\"end\" font-size=\"9\" "
                             "transform=\"rotate(-60 {0} {1})\">{2}</text>\n",
                             num(x + slot / 2), num(y0 + 12), escape(labels[i]));
        }
    }
    return s + "</svg>\n";
}

std::string heatmap(const Axes& axes, const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const Matrix& values, double lo, double hi) {
    if (values.rows() != static_cast<Index>(row_labels.size()) ||
        values.cols() != static_cast<Index>(col_labels.size())) {
        throw ShapeError("heatmap labels do not match the value grid");
    }
    if (!(hi > lo)) {
        throw ConfigError("heatmap range must have hi > lo");
    }
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double cw = values.cols() == 0 ? 0.0 : (x1 - x0) / static_cast<double>(values.cols());
    const double ch = values.rows() == 0 ? 0.0 : (y0 - kTop) / static_cast<double>(values.rows());

    std::string s = open(axes);
    for (Index r = 0; r < values.rows(); ++r) {
        // First row at the bottom, like a plot axis.
        const double y = y0 - ch * static_cast<double>(r + 1);
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(x0 - 5), num(y + ch / 2 + 4),
                         escape(row_labels[static_cast<std::size_t>(r)]));
        for (Index c = 0; c < values.cols(); ++c) {
            const double v = values(r, c);
            const double f = std::isfinite(v) ? std::clamp((v - lo) / (hi - lo), 0.0, 1.0) : 0.0;
            // White to dark blue.
            const int red = static_cast<int>(std::lround(255 - 224 * f));
            const int green = static_cast<int>(std::lround(255 - 136 * f));
            const int blue = static_cast<int>(std::lround(255 - 75 * f));
            const double x = x0 + cw * static_cast<double>(c);
            s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({},{},{})\" "
                             "stroke=\"white\"/>\n",
                             num(x), num(y), num(cw), num(ch), red, green, blue);
            s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"{}\">{}</text>\n", num(x + cw / 2),
                             num(y + ch / 2 + 4), f > 0.6 ? "white" : "black",
                             std::isfinite(v) ? fmt::format("{:.2f}", v) : std::string("NA"));
        }
    }
    for (Index c = 0; c < values.cols(); ++c) {
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                         num(x0 + cw * (static_cast<double>(c) + 0.5)), num(y0 + 16),
                         escape(col_labels[static_cast<std::size_t>(c)]));
    }
    s += fmt::format("<text x=\"{}\" y=\"{}\">{} = {}</text>\n", num(x1 + 10), num(kTop + 10), "white", tick(lo));
    s += fmt::format("<text x=\"{}\" y=\"{}\">{} = {}</text>\n", num(x1 + 10), num(kTop + 28), "blue", tick(hi));
    return s + "</svg>\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw DataError("failed writing " + path.string());
    }
}

} // namespace tsko::io
