// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset; with none, every criterion runs.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "support.hpp"
#include "tsko/io/compositional.hpp"
#include "tsko/io/report.hpp"
#include "tsko/io/svg.hpp"
#include "tsko/knockoff/knockoffs.hpp"
#include "tsko/nn/grad_check.hpp"
#include "tsko/pipeline/artifacts.hpp"
#include "tsko/pipeline/pipeline.hpp"
#include "tsko/pipeline/sweep.hpp"
#include "tsko/pipeline/worker_pool.hpp"
#include "tsko/predict/statistics.hpp"
#include "tsko/selection/selection.hpp"

namespace fs = std::filesystem;
using namespace tsko;
using tsko::test::random_matrix;
using tsko::test::random_vector;

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

const fs::path kWork = fs::temp_directory_path() / "tsko_acceptance";

// Master seed shared by the statistical criteria.
constexpr std::uint64_t kSeed = 2024;
constexpr int kRepetitions = 20;

int threads() { return pipeline::default_threads(); }

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string describe(const pipeline::MeanMetrics& m) {
    return fmt::format("FDR {:.3f}, power {:.3f}, mFDR {:.3f}, mean |S| {:.2f}", m.fdr, m.power, m.mfdr,
                       m.mean_selected);
}

// 1. Analytic gradients against central differences.
Verdict gradients() {
    constexpr double kStep = 1e-5;
    constexpr double kTolerance = 1e-5;
    // A central difference of an O(1) double-precision loss at this step is
    // only resolved to about 2e-11, so gradients below 1e-5 cannot show a
    // 1e-5 relative agreement; they are held to 1e-10 absolute instead.
    constexpr double kFloor = 1e-5;
    double worst = 0.0;
    double worst_abs = 0.0;
    int failures = 0;
    int instances = 0;
    std::string first_failure;
    auto record = [&](const nn::GradCheckReport& r, const std::string& what) {
        ++instances;
        worst = std::max(worst, r.max_relative_error);
        for (const auto& t : r.tensors) {
            worst_abs = std::max(worst_abs, t.max_abs_error);
        }
        if (!r.passed) {
            ++failures;
            if (first_failure.empty()) {
                first_failure = what + ": " + r.summary();
            }
        }
    };
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(derive_seed(kSeed, {1, seed}));
        std::uniform_int_distribution<Index> pick_p(2, 6);
        std::uniform_int_distribution<Index> pick_n(3, 12);
        std::uniform_int_distribution<Index> pick_w(1, 4);
        const Index p = pick_p(rng);
        const Index n = pick_n(rng);
        const Index k = pick_w(rng);
        const Index u = pick_w(rng);
        const std::string tag = fmt::format("seed {} (p={}, n={}, k={}, u={})", seed, p, n, k, u);

        knockoff::AutoencoderConfig ae;
        ae.bottleneck = u;
        ae.seed = seed;
        knockoff::Autoencoder net(p, ae);
        const Matrix X = random_matrix(n, p, rng);
        auto ae_slots = net.parameters();
        record(nn::grad_check(
                   ae_slots,
                   [&](bool with_gradients) {
                       if (!with_gradients) {
                           return net.loss(X);
                       }
                       nn::zero_grads(ae_slots);
                       return net.accumulate_gradients(X);
                   },
                   kStep, kTolerance, kFloor),
               "autoencoder " + tag);

        predict::PredictionConfig pc;
        pc.dense_units = k;
        pc.lstm_units = u;
        pc.batch_norm = seed % 2 == 1;
        auto pred = predict::build_prediction_network(p, pc, seed);
        pred.z = random_vector(p, rng);
        pred.z_tilde = random_vector(p, rng);
        const Matrix Xt = random_matrix(n, p, rng);
        const Vector y = random_vector(n, rng);
        auto pred_slots = pred.parameters();
        record(nn::grad_check(
                   pred_slots,
                   [&](bool with_gradients) {
                       if (!with_gradients) {
                           return pred.loss(X, Xt, y);
                       }
                       nn::zero_grads(pred_slots);
                       return pred.accumulate_gradients(X, Xt, y);
                   },
                   kStep, kTolerance, kFloor),
               "prediction " + tag);
    }
    return {failures == 0,
            fmt::format("{} networks over 20 instances, max relative error {:.2e}, max absolute error {:.2e}{}",
                        instances, worst, worst_abs, first_failure.empty() ? "" : "; first failure " + first_failure)};
}

// 2. Fast thresholds against an O(p^2) scan.
double brute_threshold(const std::vector<double>& W, double q, bool plus) {
    double best = selection::kInfinity;
    for (double wt : W) {
        if (wt == 0.0) {
            continue;
        }
        const double t = std::abs(wt);
        double neg = 0.0;
        double pos = 0.0;
        for (double w : W) {
            neg += w <= -t ? 1.0 : 0.0;
            pos += w >= t ? 1.0 : 0.0;
        }
        if (((plus ? 1.0 : 0.0) + neg) / std::max(pos, 1.0) <= q) {
            best = std::min(best, t);
        }
    }
    return best;
}

Verdict thresholds() {
    const std::vector<double> example{3, -1, 2, -2, 5};
    const double T = selection::knockoff_threshold(example, 0.5);
    const double Tp = selection::knockoff_plus_threshold(example, 0.5);
    bool ok = T == 2.0 && Tp == 3.0;

    Rng rng(derive_seed(kSeed, 2));
    std::uniform_int_distribution<int> len(1, 50);
    std::uniform_int_distribution<int> small(-5, 5);
    std::normal_distribution<double> normal(0.3, 2.0);
    std::uniform_real_distribution<double> qdist(0.01, 0.99);
    int mismatches = 0;
    std::map<std::string, int> kinds;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> W(static_cast<std::size_t>(len(rng)));
        const int kind = i % 5;
        for (auto& w : W) {
            switch (kind) {
            case 0: w = small(rng); break;
            case 1: w = normal(rng); break;
            case 2: w = -std::abs(normal(rng)) - 1e-3; break;
            case 3: w = std::abs(normal(rng)) + 1e-3; break;
            default: w = small(rng) == 0 ? 0.0 : std::round(normal(rng) * 2.0) / 2.0;
            }
        }
        const bool ties = std::set<double>(W.begin(), W.end()).size() < W.size();
        const bool zeros = std::count(W.begin(), W.end(), 0.0) > 0;
        kinds["ties"] += ties ? 1 : 0;
        kinds["zeros"] += zeros ? 1 : 0;
        kinds["all-negative"] += kind == 2 ? 1 : 0;
        kinds["all-positive"] += kind == 3 ? 1 : 0;
        const double q = qdist(rng);
        for (bool plus : {false, true}) {
            if (selection::knockoff_threshold(W, q, plus) != brute_threshold(W, q, plus)) {
                ++mismatches;
            }
        }
    }
    ok = ok && mismatches == 0;
    return {ok, fmt::format("worked example T={} T+={}; {} mismatches on 1000 vectors ({} with ties, {} with zeros, "
                            "{} all-negative, {} all-positive)",
                            T, Tp, mismatches, kinds["ties"], kinds["zeros"], kinds["all-negative"],
                            kinds["all-positive"])};
}

// 3. Swapping feature/knockoff columns negates W on the swapped set.
Verdict antisymmetry() {
    int violations = 0;
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        sim::SimConfig s = sim::preset("tiny");
        s.seed = derive_seed(kSeed, {3, seed});
        const auto data = sim::simulate(s);
        pipeline::RunConfig rc;
        rc.seed = seed;
        const auto ko = knockoff::generate_knockoffs(data.panel, rc.knockoff_config(seed));
        const auto tilde = knockoff::knockoff_panel(data.panel, ko.subjects);

        Rng rng(seed);
        std::bernoulli_distribution coin(0.5);
        std::vector<bool> swap(8);
        for (std::size_t j = 0; j < 8; ++j) {
            swap[j] = coin(rng);
        }
        auto sx = data.panel;
        auto st = tilde;
        for (Index j = 0; j < 8; ++j) {
            if (swap[static_cast<std::size_t>(j)]) {
                sx.X[0].col(j) = tilde.X[0].col(j);
                st.X[0].col(j) = data.panel.X[0].col(j);
            }
        }
        const auto pc = rc.prediction_config(seed);
        auto base_net = predict::build_prediction_network(8, pc, pc.seed);
        auto mirror_net = base_net;
        for (Index j = 0; j < 8; ++j) {
            if (swap[static_cast<std::size_t>(j)]) {
                std::swap(mirror_net.z[j], mirror_net.z_tilde[j]);
            }
        }
        const auto W = predict::compute_statistics(
                           predict::train_prediction_network(base_net, data.panel, tilde, pc).network)
                           .W;
        const auto Wm =
            predict::compute_statistics(predict::train_prediction_network(mirror_net, sx, st, pc).network).W;
        for (Index j = 0; j < 8; ++j) {
            const double expected = swap[static_cast<std::size_t>(j)] ? -W[j] : W[j];
            violations += Wm[j] == expected ? 0 : 1;
            ++checked;
        }
    }
    return {violations == 0, fmt::format("{} of {} coordinates mirrored exactly (p=8, n=40, 5 seeds, {} epochs)",
                                         checked - violations, checked, pipeline::RunConfig{}.epochs_prediction)};
}

pipeline::RunConfig scaled_config(int epochs) {
    pipeline::RunConfig c;
    c.epochs_autoencoder = epochs;
    c.epochs_prediction = epochs;
    c.repetitions = kRepetitions;
    c.threads = threads();
    c.seed = kSeed;
    return c;
}

// 4. FDR control and power on the scaled linear setting.
Verdict fdr_control() {
    const auto s = pipeline::run_repeat(pipeline::simulated_data(sim::preset("scaled-linear-linear")), scaled_config(500));
    const auto& m = s.knockoff_plus;
    return {m.fdr <= 0.25 && m.power >= 0.6,
            fmt::format("knockoff+ {}; knockoff {} (20 reps, n=400, p=100, s=10)", describe(m), describe(s.knockoff))};
}

// 5. No signals, (almost) no selections.
Verdict null_calibration() {
    const auto s = pipeline::run_repeat(pipeline::simulated_data(sim::preset("scaled-null")), scaled_config(500));
    return {s.knockoff_plus.mean_selected <= 1.0,
            fmt::format("knockoff+ mean |S| {:.2f}, knockoff mean |S| {:.2f} (20 reps, s=0)",
                        s.knockoff_plus.mean_selected, s.knockoff.mean_selected)};
}

// 6. Latent confounders: asserted at 1000 epochs, recorded at 100.
Verdict confounders() {
    const auto data = pipeline::simulated_data(sim::preset("scaled-confounder"));
    const auto full = pipeline::run_repeat(data, scaled_config(1000));
    const auto short_run = pipeline::run_repeat(data, scaled_config(100));
    fs::create_directories(kWork);
    io::write_text(kWork / "confounder_epochs.csv",
                   fmt::format("epochs,rule,fdr,power,mean_selected\n"
                               "100,knockoff+,{},{},{}\n1000,knockoff+,{},{},{}\n",
                               io::format_value(short_run.knockoff_plus.fdr),
                               io::format_value(short_run.knockoff_plus.power),
                               io::format_value(short_run.knockoff_plus.mean_selected),
                               io::format_value(full.knockoff_plus.fdr), io::format_value(full.knockoff_plus.power),
                               io::format_value(full.knockoff_plus.mean_selected)));
    return {full.knockoff_plus.fdr <= 0.25,
            fmt::format("epochs 1000: knockoff+ {}; recorded at epochs 100: knockoff+ {} (written to {})",
                        describe(full.knockoff_plus), describe(short_run.knockoff_plus),
                        (kWork / "confounder_epochs.csv").string())};
}

// 7. Power and FDR are stable across bottleneck widths.
Verdict bottleneck_slice() {
    const auto r = pipeline::run_sweep(sim::preset("scaled-linear-linear"), scaled_config(1000),
                                       {"bottleneck", {1, 3, 15, 64}}, std::nullopt);
    double lo = 1.0;
    double hi = 0.0;
    double worst_fdr = 0.0;
    std::string cells;
    for (std::size_t i = 0; i < r.rows.values.size(); ++i) {
        const auto& m = r.at(i).knockoff_plus;
        lo = std::min(lo, m.power);
        hi = std::max(hi, m.power);
        worst_fdr = std::max(worst_fdr, m.fdr);
        cells += fmt::format("{}r={}: FDR+ {:.3f} power+ {:.3f}", i == 0 ? "" : "; ", r.rows.values[i], m.fdr,
                             m.power);
    }
    return {hi - lo <= 0.15 && worst_fdr <= 0.25,
            fmt::format("power+ range {:.3f}, max FDR+ {:.3f} ({})", hi - lo, worst_fdr, cells)};
}

// 8. The residual-variance estimator is consistent.
Verdict variance_estimator() {
    constexpr double kSigma2 = 0.64;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(derive_seed(kSeed, {8, seed}));
        const Matrix C = random_matrix(200, 100, rng, 3.0);
        const Matrix X = C + random_matrix(200, 100, rng, std::sqrt(kSigma2));
        total += std::abs(knockoff::estimate_noise_variance(X, C) - kSigma2) / kSigma2;
    }
    const double mean_rel = total / 10.0;
    return {mean_rel < 0.05, fmt::format("mean relative error {:.4f} at n*p = 20000 over 10 seeds", mean_rel)};
}

// 9. CLR centering and the modified-CLR worked example.
Verdict clr_identities() {
    Rng rng(derive_seed(kSeed, 9));
    std::uniform_int_distribution<int> counts(0, 10000);
    std::uniform_int_distribution<int> width(1, 200);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        Vector x(width(rng));
        for (Index j = 0; j < x.size(); ++j) {
            x[j] = j % 4 == 0 ? 0.0 : counts(rng);
        }
        worst = std::max(worst, std::abs(io::clr_transform(x, 0.5).sum()));
    }
    Vector x(3);
    x << 1.0, std::exp(1.0), std::exp(2.0);
    const double y = io::modified_clr_response(std::exp(3.0), x, 0.0);
    return {worst < 1e-10 && y == 2.0,
            fmt::format("max |row sum| {:.2e} over 1000 rows; modified CLR example = {}", worst, io::format_value(y))};
}

// 10. Re-running from a manifest is byte-identical.
int tsko(const std::string& args) {
    const std::string cmd = std::string(TSKO_BINARY) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict determinism() {
    const fs::path dir = kWork / "determinism";
    fs::remove_all(dir);
    const std::string first = (dir / "first").string();
    if (tsko("pipeline --preset tiny --epochs-autoencoder 50 --epochs-prediction 50 --seed 10 --out " + first) != 0) {
        return {false, "initial pipeline run failed"};
    }
    const std::string manifest = (dir / "first" / "manifest.json").string();
    for (const char* run : {"a", "b"}) {
        if (tsko("--config " + manifest + " pipeline --out " + (dir / run).string()) != 0) {
            return {false, "pipeline run from the manifest failed"};
        }
    }
    int compared = 0;
    std::vector<std::string> differing;
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        if (entry.path().extension() != ".csv") {
            continue;
        }
        const auto name = entry.path().filename();
        ++compared;
        if (slurp(entry.path()) != slurp(dir / "b" / name) || slurp(entry.path()) != slurp(dir / "first" / name)) {
            differing.push_back(name.string());
        }
    }
    for (const auto& entry : fs::directory_iterator(dir / "a" / "knockoffs")) {
        ++compared;
        if (slurp(entry.path()) != slurp(dir / "b" / "knockoffs" / entry.path().filename())) {
            differing.push_back("knockoffs/" + entry.path().filename().string());
        }
    }
    std::string list;
    for (const auto& d : differing) {
        list += " " + d;
    }
    return {compared > 0 && differing.empty(),
            fmt::format("{} CSV files compared across the original and two manifest runs{}", compared,
                        differing.empty() ? ", all identical" : "; differing:" + list)};
}

struct Criterion {
    int id;
    std::string name;
    std::function<Verdict()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "gradient suite", gradients},
        {2, "threshold oracle", thresholds},
        {3, "sign-flip antisymmetry", antisymmetry},
        {4, "FDR control at desk scale", fdr_control},
        {5, "null calibration", null_calibration},
        {6, "misspecification robustness", confounders},
        {7, "bottleneck robustness", bottleneck_slice},
        {8, "variance estimator consistency", variance_estimator},
        {9, "CLR identities", clr_identities},
        {10, "determinism", determinism},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) {
        wanted.insert(std::atoi(argv[i]));
    }
    int failed = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && wanted.count(c.id) == 0) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fmt::print("{} criterion {}: {} ({:.1f} s) - {}\n", v.passed ? "PASS" : "FAIL", c.id, c.name, seconds,
                   v.detail);
        std::fflush(stdout);
        failed += v.passed ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
