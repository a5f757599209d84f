// Command-line driver: simulate, knockoffs, select, pipeline, repeat, sweep, report.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "config_format.hpp"
#include "tsko/errors.hpp"
#include "tsko/io/compositional.hpp"
#include "tsko/io/report.hpp"
#include "tsko/io/svg.hpp"
#include "tsko/io/table.hpp"
#include "tsko/pipeline/artifacts.hpp"
#include "tsko/pipeline/pipeline.hpp"
#include "tsko/pipeline/sweep.hpp"
#include "tsko/pipeline/worker_pool.hpp"
#include "tsko/sim/sim_lab.hpp"

namespace fs = std::filesystem;
using namespace tsko;

namespace {

enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kData = 3, kNumeric = 4 };

struct SimOptions {
    std::string preset = "scaled-linear-linear";
    Index m = 0, n = 0, p = 0, r = 0, s = 0;
    double A = 0.0, noise_sd = 0.0;
    std::string factor_model, link;
    bool confounders = false;
    std::map<std::string, CLI::Option*> given;

    sim::SimConfig resolve() const {
        sim::SimConfig c = sim::preset(preset);
        auto set = [&](const char* name) { return given.at(name)->count() > 0; };
        if (set("m")) c.m = m;
        if (set("n")) c.n = n;
        if (set("p")) c.p = p;
        if (set("r")) c.r = r;
        if (set("s")) c.s = s;
        if (set("A")) c.A = A;
        if (set("noise-sd")) c.noise_sd = noise_sd;
        if (set("factor-model")) c.factor_model = sim::parse_factor_model(factor_model);
        if (set("link")) c.link = sim::parse_link(link);
        if (set("confounders")) c.confounders = confounders;
        c.validate();
        return c;
    }
};

struct DataOptions {
    std::string data;
    std::string response = "y";
    std::string truth;
    bool counts = false;
    io::IngestConfig ingest;
    CLI::Option* data_opt = nullptr;
};

struct Context {
    std::string out = "out";
    pipeline::RunConfig run;
    SimOptions sim;
    DataOptions data;
    std::string knockoff_dir;
    bool write_knockoffs = true;
    std::string rows_axis = "epochs";
    std::vector<double> row_values{100, 1000};
    std::string cols_axis = "bottleneck";
    std::vector<double> col_values{1, 15};
    std::string report_input;
};

void add_sim_options(CLI::App* sub, SimOptions& o) {
    sub->add_option("--preset", o.preset, "simulation preset")
        ->capture_default_str()
        ->check(CLI::IsMember(sim::preset_names()));
    o.given["m"] = sub->add_option("--m", o.m, "subjects (overrides the preset)");
    o.given["n"] = sub->add_option("--n", o.n, "time points");
    o.given["p"] = sub->add_option("--p", o.p, "features");
    o.given["r"] = sub->add_option("--r", o.r, "latent factors");
    o.given["s"] = sub->add_option("--s", o.s, "relevant features");
    o.given["A"] = sub->add_option("--A", o.A, "signal amplitude");
    o.given["noise-sd"] = sub->add_option("--noise-sd", o.noise_sd, "response noise standard deviation");
    o.given["factor-model"] = sub->add_option("--factor-model", o.factor_model, "linear | logistic");
    o.given["link"] = sub->add_option("--link", o.link, "linear | nonlinear");
    o.given["confounders"] = sub->add_flag("--confounders,!--no-confounders", o.confounders, "add confounder term");
}

void add_data_options(CLI::App* sub, DataOptions& o, bool need_response) {
    o.data_opt = sub->add_option("--data", o.data, "long-form CSV/TSV panel (subject,time,...)");
    sub->add_option("--response", o.response, need_response ? "response column" : "response column, if present")
        ->capture_default_str();
    sub->add_option("--truth", o.truth, "CSV with an 'index' column of relevant features");
    sub->add_flag("--counts", o.counts, "input holds raw counts: filter, CLR-transform and impute");
    sub->add_option("--sample-missing", o.ingest.sample_missing_threshold, "max missing time point fraction")
        ->capture_default_str();
    sub->add_option("--feature-absence", o.ingest.feature_absence_threshold, "max zero fraction of a feature")
        ->capture_default_str();
    sub->add_option("--pseudocount", o.ingest.pseudocount, "added to counts before logs")->capture_default_str();
}

void add_common(CLI::App* sub, Context& ctx) {
    sub->add_option("--out", ctx.out, "output directory")->capture_default_str();
    sub->add_option("--seed", ctx.run.seed, "master seed")->capture_default_str();
}

void add_threads(CLI::App* sub, Context& ctx) {
    sub->add_option("--threads", ctx.run.threads, "worker threads (default: TSKO_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
}

void add_autoencoder_options(CLI::App* sub, pipeline::RunConfig& c) {
    sub->add_option("--epochs-autoencoder", c.epochs_autoencoder)->capture_default_str();
    sub->add_option("--bottleneck", c.bottleneck)->capture_default_str();
    sub->add_option("--autoencoder-layers", c.autoencoder_layers, "LSTM layers per side")->capture_default_str();
    sub->add_option("--lr-autoencoder", c.learning_rate_autoencoder)->capture_default_str();
}

void add_prediction_options(CLI::App* sub, pipeline::RunConfig& c) {
    sub->add_option("--epochs-prediction", c.epochs_prediction)->capture_default_str();
    sub->add_option("--dense-units", c.dense_units)->capture_default_str();
    sub->add_option("--lstm-units", c.lstm_units)->capture_default_str();
    sub->add_flag("--batch-norm,!--no-batch-norm", c.batch_norm)->capture_default_str();
    sub->add_option("--lr-prediction", c.learning_rate_prediction)->capture_default_str();
    sub->add_option("--q", c.q, "target FDR level")->capture_default_str();
}

std::vector<std::size_t> read_truth(const std::string& path) {
    const io::CsvTable t = io::read_csv(path);
    const std::size_t col = t.column("index");
    std::vector<std::size_t> out;
    for (const auto& row : t.rows) {
        try {
            out.push_back(static_cast<std::size_t>(std::stoull(row[col])));
        } catch (const std::exception&) {
            throw DataError(path + ": bad feature index '" + row[col] + "'");
        }
    }
    return out;
}

pipeline::Dataset load_dataset(const DataOptions& o, bool need_response) {
    const io::RawTable table = io::load_table(o.data);
    std::optional<std::string> response;
    if (need_response || table.column(o.response)) {
        response = o.response;
    }
    pipeline::Dataset d;
    if (o.counts) {
        io::IngestConfig cfg = o.ingest;
        cfg.response_feature = response;
        io::FilterReport report;
        d.panel = io::ingest(table, cfg, &report);
        fmt::print("ingest: dropped {} subjects, {} features, {} time points\n", report.dropped_subjects.size(),
                   report.dropped_features.size(), report.dropped_time_points);
    } else {
        d.panel = io::table_to_panel(io::impute_missing(table), response);
    }
    if (!o.truth.empty()) {
        d.truth = read_truth(o.truth);
        for (auto j : *d.truth) {
            if (static_cast<Index>(j) >= d.panel.features()) {
                throw DataError(o.truth + ": feature index " + std::to_string(j) + " out of range");
            }
        }
    }
    return d;
}

void write_truth(const fs::path& path, const sim::GroundTruth& truth, const std::vector<std::string>& names) {
    std::string text = "feature,index,beta\n";
    for (auto j : truth.S0) {
        text += fmt::format("{},{},{}\n", names[j], j, io::format_value(truth.beta[static_cast<Index>(j)]));
    }
    io::write_text(path, text);
}

/// Options of `sub` for the manifest: everything given (on the command line
/// or via a config file) plus captured defaults.
nlohmann::json collect_options(const CLI::App* sub) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) {
            continue;
        }
        const std::string name = opt->get_lnames().front();
        if (name == "help" || name == "threads") {
            continue;
        }
        if (opt->count() > 0) {
            const auto results = opt->as<std::vector<std::string>>();
            if (opt->get_expected_max() > 1) {
                j[name] = results;
            } else if (!results.empty()) {
                j[name] = results.back();
            }
        } else if (!opt->get_default_str().empty()) {
            j[name] = opt->get_default_str();
        }
    }
    return j;
}

void print_rule(const char* label, const pipeline::RuleOutcome& rule) {
    fmt::print("{:<10} T = {:<12} selected = {:<4}", label, io::format_value(rule.report.threshold),
               rule.report.selected.size());
    if (rule.metrics) {
        fmt::print(" FDP = {:.4f} TDP = {}", rule.metrics->fdp, io::format_value(rule.metrics->tdp));
    }
    fmt::print("\n");
}

void print_means(const char* label, const pipeline::MeanMetrics& m) {
    fmt::print("{:<10} FDR = {} power = {} mFDR = {} mean |S| = {}\n", label, io::format_value(m.fdr),
               io::format_value(m.power), io::format_value(m.mfdr), io::format_value(m.mean_selected));
}

pipeline::DataProvider provider(const Context& ctx, bool& from_file) {
    from_file = ctx.data.data_opt->count() > 0;
    if (from_file) {
        return pipeline::fixed_data(load_dataset(ctx.data, true));
    }
    return pipeline::simulated_data(ctx.sim.resolve());
}

int cmd_simulate(const Context& ctx, pipeline::Manifest& manifest) {
    const sim::SimConfig cfg = ctx.sim.resolve();
    const std::uint64_t seed = pipeline::run_seed(ctx.run.seed, 0);
    sim::SimConfig seeded = cfg;
    seeded.seed = derive_seed(seed, stream::simulation);
    const auto sim = sim::simulate(seeded);
    fs::create_directories(ctx.out);
    io::write_panel(fs::path(ctx.out) / "panel.csv", sim.panel);
    write_truth(fs::path(ctx.out) / "truth.csv", sim.truth, sim.panel.feature_names);
    manifest.run_seeds = {seed};
    manifest.outputs = {"panel.csv", "truth.csv"};
    fmt::print("simulated {} x {} x {} panel with {} relevant features\n", sim.panel.subjects(),
               sim.panel.time_points(), sim.panel.features(), sim.truth.S0.size());
    return kOk;
}

int cmd_knockoffs(const Context& ctx, pipeline::Manifest& manifest) {
    ctx.run.validate();
    if (ctx.data.data.empty()) {
        throw ConfigError("--data is required");
    }
    const pipeline::Dataset d = load_dataset(ctx.data, false);
    const std::uint64_t seed = pipeline::run_seed(ctx.run.seed, 0);
    const auto run = knockoff::generate_knockoffs(d.panel, ctx.run.knockoff_config(seed));
    const fs::path dir = fs::path(ctx.out) / "knockoffs";
    pipeline::write_knockoff_dir(dir, run.subjects, d.panel);
    manifest.run_seeds = {seed};
    TimeSeriesPanel labelled = d.panel;
    label_defaults(labelled);
    for (const auto& id : labelled.subject_ids) {
        manifest.outputs.push_back("knockoffs/" + pipeline::knockoff_file_name(id));
    }
    fmt::print("autoencoder loss {} -> {}\n", io::format_value(run.model.initial_loss),
               io::format_value(run.model.final_loss()));
    for (std::size_t i = 0; i < run.subjects.size(); ++i) {
        fmt::print("{}: theta_hat = {}\n", labelled.subject_ids[i], io::format_value(run.subjects[i].theta_hat));
    }
    return kOk;
}

int cmd_select(const Context& ctx, pipeline::Manifest& manifest) {
    ctx.run.validate();
    if (ctx.data.data.empty() || ctx.knockoff_dir.empty()) {
        throw ConfigError("--data and --knockoffs are required");
    }
    const pipeline::Dataset d = load_dataset(ctx.data, true);
    const TimeSeriesPanel tilde = pipeline::read_knockoff_dir(ctx.knockoff_dir, d.panel);
    const std::uint64_t seed = pipeline::run_seed(ctx.run.seed, 0);
    const auto outcome = pipeline::select_with_knockoffs(d, tilde, ctx.run, seed);
    manifest.run_seeds = {seed};
    manifest.outputs = pipeline::write_run_artifacts(ctx.out, outcome, feature_labels(d.panel));
    print_rule("knockoff", outcome.knockoff);
    print_rule("knockoff+", outcome.knockoff_plus);
    return kOk;
}

int cmd_pipeline(const Context& ctx, pipeline::Manifest& manifest) {
    ctx.run.validate();
    bool from_file = false;
    const auto data = provider(ctx, from_file);
    const std::uint64_t seed = pipeline::run_seed(ctx.run.seed, 0);
    const pipeline::Dataset d = data(seed);
    const auto outcome = pipeline::run_pipeline(d, ctx.run, seed);
    manifest.run_seeds = {seed};
    manifest.outputs = pipeline::write_run_artifacts(ctx.out, outcome, feature_labels(d.panel));
    if (!from_file) {
        io::write_panel(fs::path(ctx.out) / "panel.csv", d.panel);
        manifest.outputs.emplace_back("panel.csv");
    }
    if (ctx.write_knockoffs) {
        pipeline::write_knockoff_dir(fs::path(ctx.out) / "knockoffs", outcome.knockoffs, d.panel);
        manifest.outputs.emplace_back("knockoffs/");
    }
    double theta = 0.0;
    for (const auto& k : outcome.knockoffs) {
        theta += k.theta_hat;
    }
    fmt::print("autoencoder loss {}  mean theta_hat {}  prediction loss {}\n",
               io::format_value(outcome.autoencoder_loss),
               io::format_value(theta / static_cast<double>(outcome.knockoffs.size())),
               io::format_value(outcome.prediction_loss));
    print_rule("knockoff", outcome.knockoff);
    print_rule("knockoff+", outcome.knockoff_plus);
    return kOk;
}

int cmd_repeat(const Context& ctx, pipeline::Manifest& manifest) {
    ctx.run.validate();
    bool from_file = false;
    const auto data = provider(ctx, from_file);
    const auto summary = pipeline::run_repeat(data, ctx.run);
    for (const auto& r : summary.runs) {
        manifest.run_seeds.push_back(r.seed);
    }
    manifest.outputs = pipeline::write_repeat_artifacts(ctx.out, summary);
    fmt::print("{} runs\n", summary.runs.size());
    print_means("knockoff", summary.knockoff);
    print_means("knockoff+", summary.knockoff_plus);
    return kOk;
}

int cmd_sweep(const Context& ctx, pipeline::Manifest& manifest) {
    ctx.run.validate();
    const pipeline::SweepAxis rows{ctx.rows_axis, ctx.row_values};
    std::optional<pipeline::SweepAxis> cols;
    if (!ctx.cols_axis.empty() && ctx.cols_axis != "none") {
        cols = pipeline::SweepAxis{ctx.cols_axis, ctx.col_values};
    }
    const auto result = pipeline::run_sweep(ctx.sim.resolve(), ctx.run, rows, cols);
    for (int r = 0; r < ctx.run.repetitions; ++r) {
        manifest.run_seeds.push_back(pipeline::run_seed(ctx.run.seed, static_cast<std::size_t>(r)));
    }
    manifest.outputs = pipeline::write_sweep_artifacts(ctx.out, result);
    for (const auto& c : result.cells) {
        fmt::print("{} = {:<8}", rows.name, io::format_value(c.row_value));
        if (cols) {
            fmt::print(" {} = {:<8}", cols->name, io::format_value(c.col_value));
        }
        fmt::print(" FDR+ = {:.3f} Power+ = {:.3f} FDR = {:.3f} Power = {:.3f}\n", c.knockoff_plus.fdr,
                   c.knockoff_plus.power, c.knockoff.fdr, c.knockoff.power);
    }
    return kOk;
}

pipeline::MeanMetrics means_of(const std::vector<io::MetricsRow>& rows, const std::string& rule) {
    pipeline::MeanMetrics m;
    std::size_t count = 0;
    m.evaluated = true;
    for (const auto& r : rows) {
        if (r.rule != rule) {
            continue;
        }
        ++count;
        m.mean_selected += static_cast<double>(r.selected);
        if (!r.fdp || !r.mfdr_term) {
            m.evaluated = false;
            continue;
        }
        m.fdr += *r.fdp;
        m.mfdr += *r.mfdr_term;
        m.power += r.tdp ? *r.tdp : std::nan("");
    }
    const double n = count == 0 ? std::nan("") : static_cast<double>(count);
    m.mean_selected /= n;
    m.fdr = m.evaluated ? m.fdr / n : std::nan("");
    m.power = m.evaluated ? m.power / n : std::nan("");
    m.mfdr = m.evaluated ? m.mfdr / n : std::nan("");
    return m;
}

int cmd_report(const Context& ctx, pipeline::Manifest& manifest) {
    if (ctx.report_input.empty()) {
        throw ConfigError("--input is required");
    }
    const fs::path in(ctx.report_input);
    const fs::path out(ctx.out);
    fs::create_directories(out);
    bool any = false;

    if (fs::exists(in / "metrics.csv")) {
        any = true;
        const auto rows = io::read_metrics_csv(in / "metrics.csv");
        const auto k = means_of(rows, "knockoff");
        const auto kp = means_of(rows, "knockoff+");
        std::size_t runs = 0;
        std::vector<io::Series> series{{"FDP+", {}, {}}, {"TDP+", {}, {}}};
        for (const auto& r : rows) {
            if (r.rule == "knockoff+") {
                ++runs;
                series[0].x.push_back(static_cast<double>(r.run));
                series[0].y.push_back(r.fdp.value_or(std::nan("")));
                series[1].x.push_back(static_cast<double>(r.run));
                series[1].y.push_back(r.tdp.value_or(std::nan("")));
            }
        }
        pipeline::write_summary_csv(out / "summary.csv", runs, k, kp);
        io::write_text(out / "runs.svg",
                       io::line_chart({"Per-run FDP and TDP (knockoff+)", "run", "proportion", std::pair{0.0, 1.0}},
                                      series));
        manifest.outputs.insert(manifest.outputs.end(), {"summary.csv", "runs.svg"});
        print_means("knockoff", k);
        print_means("knockoff+", kp);
    }
    for (const char* stem : {"frequencies_knockoff", "frequencies_knockoff_plus"}) {
        const fs::path file = in / (std::string(stem) + ".csv");
        if (!fs::exists(file)) {
            continue;
        }
        any = true;
        const auto rows = io::read_frequency_csv(file);
        std::vector<std::string> names;
        std::vector<double> counts;
        for (std::size_t i = 0; i < std::min<std::size_t>(20, rows.size()); ++i) {
            names.push_back(rows[i].feature);
            counts.push_back(static_cast<double>(rows[i].count));
        }
        const std::string svg = std::string(stem) + ".svg";
        io::write_text(out / svg, io::bar_chart({"Top selection counts", "feature", "runs selected", std::nullopt},
                                                names, counts));
        manifest.outputs.push_back(svg);
    }
    if (fs::exists(in / "statistics.csv")) {
        any = true;
        const io::CsvTable t = io::read_csv(in / "statistics.csv");
        std::vector<std::string> names;
        std::vector<double> W;
        for (const auto& row : t.rows) {
            names.push_back(row[t.column("feature")]);
            W.push_back(std::stod(row[t.column("W")]));
        }
        io::write_text(out / "statistics.svg",
                       io::bar_chart({"Knockoff statistics", "feature", "W", std::nullopt}, names, W));
        manifest.outputs.emplace_back("statistics.svg");
    }
    if (!any) {
        throw DataError("no metrics.csv, frequencies_*.csv or statistics.csv in " + in.string());
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deep knockoff feature selection for time series"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "key = value file or a manifest.json of an earlier run");
    app.config_formatter(std::make_shared<cli::ConfigFormat>(&app));

    Context ctx;
    int status = kOk;
    try {
        ctx.run.threads = pipeline::default_threads();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }

    auto* simulate = app.add_subcommand("simulate", "write a simulated panel and its truth");
    add_common(simulate, ctx);
    add_sim_options(simulate, ctx.sim);

    auto* knockoffs = app.add_subcommand("knockoffs", "train the autoencoder and write knockoff files");
    add_common(knockoffs, ctx);
    add_data_options(knockoffs, ctx.data, false);
    add_autoencoder_options(knockoffs, ctx.run);

    auto* select = app.add_subcommand("select", "train the prediction network on data plus knockoffs and select");
    add_common(select, ctx);
    add_data_options(select, ctx.data, true);
    select->add_option("--knockoffs", ctx.knockoff_dir, "directory of knockoff files");
    add_prediction_options(select, ctx.run);

    auto* pipe = app.add_subcommand("pipeline", "one end-to-end run on a file or a simulation preset");
    add_common(pipe, ctx);
    add_data_options(pipe, ctx.data, true);
    add_sim_options(pipe, ctx.sim);
    add_autoencoder_options(pipe, ctx.run);
    add_prediction_options(pipe, ctx.run);
    pipe->add_flag("--write-knockoffs,!--no-write-knockoffs", ctx.write_knockoffs)->capture_default_str();

    auto* repeat = app.add_subcommand("repeat", "independent runs with derived seeds");
    add_common(repeat, ctx);
    add_data_options(repeat, ctx.data, true);
    add_sim_options(repeat, ctx.sim);
    add_autoencoder_options(repeat, ctx.run);
    add_prediction_options(repeat, ctx.run);
    add_threads(repeat, ctx);
    repeat->add_option("--repetitions", ctx.run.repetitions)->default_val(200)->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "grid of simulation runs over one or two parameters");
    add_common(sweep, ctx);
    add_sim_options(sweep, ctx.sim);
    add_autoencoder_options(sweep, ctx.run);
    add_prediction_options(sweep, ctx.run);
    add_threads(sweep, ctx);
    sweep->add_option("--repetitions", ctx.run.repetitions, "runs per cell")->default_val(50)
        ->check(CLI::PositiveNumber);
    sweep->add_option("--rows", ctx.rows_axis, "row parameter")->capture_default_str();
    sweep->add_option("--row-values", ctx.row_values)->capture_default_str()->expected(1, CLI::detail::expected_max_vector_size);
    sweep->add_option("--cols", ctx.cols_axis, "column parameter, or none")->capture_default_str();
    sweep->add_option("--col-values", ctx.col_values)->capture_default_str()->expected(1, CLI::detail::expected_max_vector_size);

    auto* report = app.add_subcommand("report", "summaries and plots from an earlier output directory");
    report->add_option("--input", ctx.report_input, "directory with metrics/frequency/statistics CSVs");
    report->add_option("--out", ctx.out, "output directory")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    pipeline::Manifest manifest;
    manifest.command = sub->get_name();
    try {
        const std::map<std::string, int (*)(const Context&, pipeline::Manifest&)> commands{
            {"simulate", cmd_simulate}, {"knockoffs", cmd_knockoffs}, {"select", cmd_select},
            {"pipeline", cmd_pipeline}, {"repeat", cmd_repeat},       {"sweep", cmd_sweep},
            {"report", cmd_report}};
        manifest.options = collect_options(sub);
        status = commands.at(sub->get_name())(ctx, manifest);
        pipeline::write_manifest(fs::path(ctx.out) / "manifest.json", manifest);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const ShapeError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
    return status;
}
