#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tsko/errors.hpp"
#include "tsko/io/compositional.hpp"
#include "tsko/io/report.hpp"
#include "tsko/io/svg.hpp"
#include "tsko/io/table.hpp"

using namespace tsko;
using namespace tsko::io;
using tsko::test::random_matrix;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("tsko_test_io_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        parse_table(text);
    } catch (const DataError& e) {
        return e.what();
    }
    return {};
}

// Every opened element is closed in order and the document is one <svg> root.
bool balanced_xml(const std::string& doc) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    int roots = 0;
    while ((pos = doc.find('<', pos)) != std::string::npos) {
        const auto end = doc.find('>', pos);
        if (end == std::string::npos) {
            return false;
        }
        const std::string tag = doc.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.empty() || tag[0] == '?' || tag[0] == '!') {
            continue;
        }
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) {
                return false;
            }
            stack.pop_back();
            continue;
        }
        const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
        if (stack.empty()) {
            ++roots;
        }
        if (tag.back() != '/') {
            stack.push_back(name);
        }
    }
    return stack.empty() && roots == 1;
}

RawTable toy_counts() {
    // Three subjects over four times; s3 misses three of the four.
    return parse_table("subject,time,a,b,c,rare\n"
                       "s1,0,10,5,1,0\n"
                       "s1,1,NA,NA,NA,NA\n"
                       "s1,2,8,4,2,0\n"
                       "s1,3,9,6,0,0\n"
                       "s2,0,3,7,1,0\n"
                       "s2,1,4,8,2,1\n"
                       "s2,2,5,9,3,0\n"
                       "s2,3,6,1,4,0\n"
                       "s3,0,1,1,1,0\n"
                       "s3,1,,,,\n"
                       "s3,2,NA,NA,NA,NA\n");
}

} // namespace

TEST_CASE("toy table becomes a 2 x 3 x 4 panel") {
    const auto table = parse_table("subject\ttime\tf1\tf2\tf3\tf4\n"
                                   "A\t1\t1\t2\t3\t4\n"
                                   "A\t2\t5\t6\t7\t8\n"
                                   "A\t3\t9\t10\t11\t12\n"
                                   "B\t3\t0\t0\t0\t1\n"
                                   "B\t1\t1\t0\t0\t0\n"
                                   "B\t2\t0\t1\t0\t0\n");
    const auto panel = table_to_panel(table, std::nullopt);
    CHECK(panel.subjects() == 2);
    CHECK(panel.time_points() == 3);
    CHECK(panel.features() == 4);
    CHECK(panel.subject_ids == std::vector<std::string>{"A", "B"});
    CHECK(panel.X[1](0, 0) == 1.0); // rows sorted by time
    CHECK(panel.X[1](2, 3) == 1.0);
    CHECK(!panel.has_response());
}

TEST_CASE("parse errors name the offending line") {
    CHECK(error_of("a,b,c\n1,2,3\n").find(":1:") != std::string::npos);
    CHECK(error_of("a,b,c\n1,2,3\n").find("header") != std::string::npos);
    CHECK(error_of("subject,time,x\ns,1,2\ns,1,3\n").find(":3:") != std::string::npos);
    CHECK(error_of("subject,time,x\ns,1,2\ns,1,3\n").find("duplicate") != std::string::npos);
    CHECK(error_of("subject,time,x\ns,1,oops\n").find("non-numeric") != std::string::npos);
    CHECK(error_of("subject,time,x,y\ns,1,2\n").find(":2:") != std::string::npos);
    CHECK(error_of("subject,time,x,y\ns,1,2,NA\n").find("partially") != std::string::npos);
    CHECK(error_of("subject,time,x,x\ns,1,2,3\n").find("duplicate column") != std::string::npos);
    CHECK(error_of("subject,time,x\n").find("no data rows") != std::string::npos);
    CHECK(error_of("").find("empty") != std::string::npos);
    CHECK_THROWS_AS(load_table("/nonexistent/file.csv"), DataError);
}

TEST_CASE("subjects observed at different times are aligned with gaps") {
    const auto t = parse_table("subject,time,x\na,0,1\na,2,3\nb,1,5\n");
    CHECK(t.times == std::vector<double>{0, 1, 2});
    CHECK(std::isnan(t.values[0](1, 0)));
    CHECK(std::isnan(t.values[1](0, 0)));
    CHECK_THROWS_AS(table_to_panel(t, std::nullopt), DataError);
}

TEST_CASE("CLR examples") {
    Vector x(3);
    x << 1.0, std::exp(1.0), std::exp(2.0);
    const Vector c = clr_transform(x, 0.0);
    CHECK(c[0] == doctest::Approx(-1.0));
    CHECK(c[1] == doctest::Approx(0.0));
    CHECK(c[2] == doctest::Approx(1.0));
    CHECK(clr_transform(Vector::Constant(5, 7.0), 0.5).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(clr_transform(Vector::Zero(3), 0.0), DataError);
    CHECK_THROWS_AS(clr_transform(Vector::Constant(2, -1.0), 0.5), DataError);
    CHECK_THROWS_AS(clr_transform(Vector(), 0.5), DataError);
}

TEST_CASE("CLR rows sum to zero") {
    Rng rng(1);
    std::uniform_int_distribution<int> count(0, 5000);
    for (int i = 0; i < 500; ++i) {
        Vector x(1 + i % 60);
        for (Index j = 0; j < x.size(); ++j) {
            x[j] = count(rng) * (j % 3 == 0 ? 0 : 1);
        }
        CHECK(std::abs(clr_transform(x, 0.5).sum()) < 1e-10);
    }
}

TEST_CASE("modified CLR examples") {
    Vector x(3);
    x << 1.0, std::exp(1.0), std::exp(2.0);
    CHECK(modified_clr_response(std::exp(3.0), x, 0.0) == doctest::Approx(2.0));
    CHECK(modified_clr_response(std::exp(1.0), x, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    const double lambda = 4.0;
    const double base = modified_clr_response(20.0, x, 0.0);
    CHECK(modified_clr_response(20.0, lambda * x, 0.0) == doctest::Approx(base - std::log(lambda)));
    CHECK_THROWS_AS(modified_clr_response(1.0, Vector(), 0.5), DataError);
    CHECK_THROWS_AS(modified_clr_response(0.0, x, 0.0), DataError);
    CHECK_THROWS_AS(modified_clr_response(-1.0, x, 0.5), DataError);
}

TEST_CASE("filter drops a subject with 13 of 24 months missing") {
    std::ostringstream text;
    text << "subject,time,a,b\n";
    for (int t = 0; t < 24; ++t) {
        text << "keep," << t << ",1,2\n";
        text << "drop," << t << (t < 13 ? ",NA,NA\n" : ",3,4\n");
        text << "edge," << t << (t < 12 ? ",NA,NA\n" : ",3,4\n");
    }
    FilterReport report;
    const auto out = filter_missing(parse_table(text.str()), IngestConfig{}, &report);
    CHECK(report.dropped_subjects == std::vector<std::string>{"drop"});
    CHECK(out.subject_ids == std::vector<std::string>{"keep", "edge"});
    CHECK(out.columns == std::vector<std::string>{"a", "b"});
}

TEST_CASE("filter drops rare features but keeps the response") {
    IngestConfig c;
    c.response_feature = "rare";
    FilterReport report;
    const auto table = toy_counts();
    const auto kept = filter_missing(table, c, &report);
    CHECK(report.dropped_subjects == std::vector<std::string>{"s3"});
    CHECK(report.dropped_features.empty());
    CHECK(kept.columns.back() == "rare");

    c.response_feature.reset();
    const auto dropped = filter_missing(table, c, &report);
    // rare is zero in 6 of the 7 observed samples of s1 and s2 (0.86 <= 0.9).
    CHECK(report.dropped_features.empty());
    c.feature_absence_threshold = 0.8;
    filter_missing(table, c, &report);
    CHECK(report.dropped_features == std::vector<std::string>{"rare"});
    CHECK(dropped.columns.size() == 4);
}

TEST_CASE("filtering is idempotent") {
    IngestConfig c;
    c.feature_absence_threshold = 0.8;
    const auto once = filter_missing(toy_counts(), c);
    const auto twice = filter_missing(once, c);
    CHECK(once.columns == twice.columns);
    CHECK(once.subject_ids == twice.subject_ids);
    CHECK(once.times == twice.times);
    REQUIRE(once.values.size() == twice.values.size());
    for (std::size_t i = 0; i < once.values.size(); ++i) {
        CHECK(once.values[i].cwiseEqual(twice.values[i]).count() ==
              twice.values[i].cwiseEqual(twice.values[i]).count());
    }
}

TEST_CASE("filter errors") {
    IngestConfig c;
    c.response_feature = "missing";
    CHECK_THROWS_AS(filter_missing(toy_counts(), c), DataError);
    c = IngestConfig{};
    c.sample_missing_threshold = 1.5;
    CHECK_THROWS_AS(filter_missing(toy_counts(), c), ConfigError);
    c = IngestConfig{};
    c.pseudocount = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = IngestConfig{};
    c.sample_missing_threshold = 0.0;
    CHECK_THROWS_AS(filter_missing(parse_table("subject,time,x\na,0,1\na,1,NA\n"), c), DataError);
    c = IngestConfig{};
    c.feature_absence_threshold = 0.0;
    CHECK_THROWS_AS(filter_missing(parse_table("subject,time,x\na,0,0\na,1,1\n"), c), DataError);
}

TEST_CASE("imputation interpolates inside and carries values at the ends") {
    const auto t = parse_table("subject,time,x,y\n"
                               "a,0,NA,NA\n"
                               "a,1,2,10\n"
                               "a,2,NA,NA\n"
                               "a,4,8,20\n"
                               "a,5,NA,NA\n");
    const auto filled = impute_missing(t);
    const Matrix& v = filled.values[0];
    CHECK(v(0, 0) == 2.0);
    CHECK(v(2, 0) == doctest::Approx(4.0)); // a third of the way from t=1 to t=4
    CHECK(v(2, 1) == doctest::Approx(10.0 + 10.0 / 3.0));
    CHECK(v(4, 1) == 20.0);
    CHECK(v.allFinite());

    const auto empty = parse_table("subject,time,x\na,0,1\nb,1,NA\n");
    CHECK_THROWS_AS(impute_missing(empty), DataError);
}

TEST_CASE("ingest transforms rows, keeps the response separate and fills gaps") {
    IngestConfig c;
    c.response_feature = "rare";
    const auto panel = ingest(toy_counts(), c);
    CHECK(panel.subjects() == 2);
    CHECK(panel.features() == 3);
    CHECK(panel.has_response());
    CHECK(panel.feature_names == std::vector<std::string>{"a", "b", "c"});
    for (const auto& X : panel.X) {
        for (Index t = 0; t < X.rows(); ++t) {
            CHECK(std::abs(X.row(t).sum()) < 1e-10);
        }
    }
    Vector x0(3);
    x0 << 10, 5, 1;
    CHECK(panel.y[0][0] == doctest::Approx(modified_clr_response(0.0, x0, 0.5)));
    // s1 at t=1 is interpolated between its transformed neighbours.
    const Matrix& X = panel.X[0];
    CHECK(X(1, 2) == doctest::Approx(0.5 * (X(0, 2) + X(2, 2))));
}

TEST_CASE("panel round-trip is exact") {
    const auto dir = temp_dir("roundtrip");
    Rng rng(4);
    TimeSeriesPanel p;
    p.X = {random_matrix(5, 3, rng, 1e3), random_matrix(5, 3, rng, 1e-7)};
    p.y = {tsko::test::random_vector(5, rng), tsko::test::random_vector(5, rng)};
    p.X[0](2, 1) = 1.0 / 3.0;
    label_defaults(p);
    p.feature_names = {"alpha", "beta", "gamma"};
    write_panel(dir / "panel.csv", p);
    const auto back = load_panel(dir / "panel.csv");
    CHECK(back.X == p.X);
    CHECK(back.y == p.y);
    CHECK(back.feature_names == p.feature_names);
    CHECK(back.subject_ids == p.subject_ids);
    CHECK(back.times == p.times);
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("selection and statistics reports") {
    const auto dir = temp_dir("reports");
    const std::vector<std::string> names{"a", "b", "c"};
    const auto none = selection::make_selection(std::vector<double>{-1, -2, 0}, 0.2, true);
    write_selection_csv(dir / "empty.csv", none, names);
    const auto table = read_csv(dir / "empty.csv");
    CHECK(table.header == std::vector<std::string>{"feature", "index", "W"});
    CHECK(table.rows.empty());

    Vector Z(3), Zt(3), W(3);
    Z << 1, 2, 3;
    Zt << 1, 1, 4;
    W << 0, 3, -7;
    write_statistics_csv(dir / "stats.csv", names, Z, Zt, W);
    const auto stats = read_csv(dir / "stats.csv");
    CHECK(stats.rows.size() == 3);
    CHECK(stats.rows[2][stats.column("W")] == "-7");
    CHECK_THROWS_AS(stats.column("nope"), DataError);
}

TEST_CASE("metrics rows round-trip including missing values") {
    const auto dir = temp_dir("metrics");
    std::vector<MetricsRow> rows(2);
    rows[0] = {0, 42, "knockoff", 1.25, 3, 1.0 / 3.0, 0.5, 0.125};
    rows[1] = {1, 43, "knockoff+", selection::kInfinity, 0, 0.0, std::nullopt, std::nullopt};
    write_metrics_csv(dir / "m.csv", rows);
    const auto back = read_metrics_csv(dir / "m.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].fdp == rows[0].fdp);
    CHECK(back[0].threshold == 1.25);
    CHECK(std::isinf(back[1].threshold));
    CHECK(!back[1].tdp.has_value());
    CHECK(back[1].rule == "knockoff+");
    CHECK(back[1].seed == 43);
    CHECK(format_value(std::nan("")) == "NA");
}

TEST_CASE("frequency report is sorted and deterministic") {
    const auto dir = temp_dir("frequency");
    std::vector<std::vector<std::size_t>> runs(200);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        runs[r] = {1};
        if (r % 2 == 0) {
            runs[r].push_back(3);
        }
        if (r % 10 == 0) {
            runs[r].push_back(0);
        }
    }
    const auto report = selection::aggregate_runs(runs, 4);
    const std::vector<std::string> names{"w", "x", "y", "z"};
    write_frequency_csv(dir / "a.csv", report, names);
    write_frequency_csv(dir / "b.csv", report, names);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    const auto rows = read_frequency_csv(dir / "a.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].feature == "x");
    CHECK(rows[0].count == 200);
    CHECK(rows[1].feature == "z");
    CHECK(rows[2].feature == "w");
    CHECK(rows[3].count == 0);
}

TEST_CASE("charts are well-formed SVG with escaped text") {
    Axes axes{"FDR & power <demo>", "epochs", "rate", std::make_pair(0.0, 1.0)};
    const auto line = line_chart(axes, {{"fdr", {1, 2, 3}, {0.1, 0.2, 0.15}}, {"power", {1, 2, 3}, {0.5, 0.9, 1}}});
    CHECK(balanced_xml(line));
    CHECK(line.find("&amp;") != std::string::npos);
    CHECK(line.find("&lt;demo&gt;") != std::string::npos);
    CHECK(balanced_xml(bar_chart(axes, {"a", "b"}, {3, 0})));
    CHECK(balanced_xml(bar_chart(axes, {}, {})));
    Matrix m(2, 2);
    m << 0.1, 0.2, 0.3, std::nan("");
    CHECK(balanced_xml(heatmap(axes, {"r1", "r2"}, {"c1", "c2"}, m, 0.0, 1.0)));
    CHECK(balanced_xml(line_chart(Axes{}, {})));
    CHECK(line_chart(axes, {{"s", {1, 2}, {3, 4}}}) == line_chart(axes, {{"s", {1, 2}, {3, 4}}}));
}
