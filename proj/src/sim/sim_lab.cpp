#include "tsko/sim/sim_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace tsko::sim {

namespace {

constexpr std::uint64_t kLoadingStream = 10;
constexpr std::uint64_t kCoefficientStream = 11;
constexpr std::uint64_t kFactorStream = 12;
constexpr std::uint64_t kFeatureNoiseStream = 13;
constexpr std::uint64_t kResponseNoiseStream = 14;

Matrix standard_normal(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    Matrix out(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            out(i, j) = z(rng);
        }
    }
    return out;
}

} // namespace

std::string to_string(FactorModel m) { return m == FactorModel::linear ? "linear" : "logistic"; }
std::string to_string(Link l) { return l == Link::linear ? "linear" : "nonlinear"; }

FactorModel parse_factor_model(std::string_view s) {
    if (s == "linear") {
        return FactorModel::linear;
    }
    if (s == "logistic") {
        return FactorModel::logistic;
    }
    throw ConfigError("unknown factor model '" + std::string(s) + "' (expected linear or logistic)");
}

Link parse_link(std::string_view s) {
    if (s == "linear") {
        return Link::linear;
    }
    if (s == "nonlinear") {
        return Link::nonlinear;
    }
    throw ConfigError("unknown link '" + std::string(s) + "' (expected linear or nonlinear)");
}

void SimConfig::validate() const {
    if (m < 1 || n < 1 || p < 1) {
        throw ConfigError("m, n and p must be positive");
    }
    if (r < 1) {
        throw ConfigError("at least one latent factor is required");
    }
    if (s < 0 || s > p) {
        throw ConfigError("number of signals must lie in [0, p]");
    }
    if (!(A > 0.0)) {
        throw ConfigError("signal amplitude must be positive");
    }
    if (std::abs(w0 + w1 - 1.0) > 1e-12) {
        throw ConfigError("temporal weights must sum to one");
    }
    if (!(std::abs(factor_correlation) < 1.0)) {
        throw ConfigError("factor correlation must lie in (-1, 1)");
    }
    if (confounders && r < 3) {
        throw ConfigError("latent confounders need at least three factors");
    }
    if (noise_sd < 0.0 || feature_noise_sd < 0.0) {
        throw ConfigError("noise standard deviations must be non-negative");
    }
}

Matrix ar1_covariance(Index r, double rho) {
    Matrix sigma(r, r);
    for (Index i = 0; i < r; ++i) {
        for (Index j = 0; j < r; ++j) {
            sigma(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
        }
    }
    return sigma;
}

Matrix weight_factors(const Matrix& raw, double w0, double w1) {
    if (std::abs(w0 + w1 - 1.0) > 1e-12) {
        throw ConfigError("temporal weights must sum to one");
    }
    Matrix F(raw.rows(), raw.cols());
    if (raw.rows() == 0) {
        return F;
    }
    F.row(0) = raw.row(0);
    for (Index t = 1; t < raw.rows(); ++t) {
        F.row(t) = w0 * raw.row(t - 1) + w1 * raw.row(t);
    }
    return F;
}

Matrix gen_factors(Index n, Index r, double w0, double w1, Rng& rng, double rho) {
    if (std::abs(w0 + w1 - 1.0) > 1e-12) {
        throw ConfigError("temporal weights must sum to one");
    }
    const Eigen::LLT<Matrix> llt(ar1_covariance(r, rho));
    const Matrix L = llt.matrixL();
    const Matrix raw = standard_normal(n, r, rng) * L.transpose();
    return weight_factors(raw, w0, w1);
}

Matrix gen_design_linear(const Matrix& F, const Matrix& Lambda, Rng& noise_rng, double noise_sd) {
    if (Lambda.cols() != F.cols()) {
        throw ShapeError("loading matrix must have one column per factor");
    }
    Matrix X = F * Lambda.transpose();
    if (noise_sd > 0.0) {
        X += noise_sd * standard_normal(X.rows(), X.cols(), noise_rng);
    }
    return X;
}

Matrix gen_design_logistic(const Matrix& F, const Matrix& lambdas, const Vector& c, Rng& noise_rng, double noise_sd) {
    const Index n = F.rows();
    const Index r = F.cols();
    const Index p = lambdas.rows();
    if (lambdas.cols() != r + 1 || c.size() != p) {
        throw ShapeError("logistic loadings must be p x (r + 1) with p scales");
    }
    Matrix X(n, p);
    for (Index t = 0; t < n; ++t) {
        for (Index k = 0; k < p; ++k) {
            double eta = lambdas(k, 0);
            for (Index a = 0; a < r; ++a) {
                eta += F(t, a) * lambdas(k, a + 1);
            }
            X(t, k) = c[k] / (1.0 + std::exp(eta));
        }
    }
    if (noise_sd > 0.0) {
        X += noise_sd * standard_normal(n, p, noise_rng);
    }
    return X;
}

std::pair<Vector, std::vector<std::size_t>> gen_coefficients(Index p, Index s, double A, Rng& rng) {
    if (s < 0 || s > p) {
        throw ConfigError("number of signals must lie in [0, p]");
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(p));
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first s slots are a uniform sample without replacement.
    for (Index i = 0; i < s; ++i) {
        std::uniform_int_distribution<Index> pick(i, p - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<std::size_t> S0(idx.begin(), idx.begin() + s);
    std::sort(S0.begin(), S0.end());
    Vector beta = Vector::Zero(p);
    std::bernoulli_distribution coin(0.5);
    for (auto j : S0) {
        beta[static_cast<Index>(j)] = coin(rng) ? A : -A;
    }
    return {beta, S0};
}

Vector gen_response(const Matrix& X, const Vector& beta, Link link, const Matrix& F, bool confounders, Rng& noise_rng,
                    double noise_sd) {
    if (beta.size() != X.cols()) {
        throw ShapeError("coefficient vector length does not match the feature count");
    }
    Vector eta = X * beta;
    Vector y(X.rows());
    for (Index t = 0; t < X.rows(); ++t) {
        y[t] = link == Link::linear ? eta[t] : std::sin(eta[t]) * std::exp(eta[t]);
    }
    if (confounders) {
        if (F.rows() != X.rows() || F.cols() < 3) {
            throw ShapeError("confounded response needs n x r factors with r >= 3");
        }
        for (Index t = 0; t < X.rows(); ++t) {
            y[t] += (F(t, 0) + F(t, 1) + F(t, 2)) / 3.0;
        }
    }
    if (noise_sd > 0.0) {
        std::normal_distribution<double> e(0.0, noise_sd);
        for (Index t = 0; t < y.size(); ++t) {
            y[t] += e(noise_rng);
        }
    }
    return y;
}

Loadings gen_loadings(FactorModel model, Index p, Index r, Rng& rng) {
    Loadings l;
    if (model == FactorModel::linear) {
        l.Lambda = standard_normal(p, r, rng);
    } else {
        l.lambdas = standard_normal(p, r + 1, rng);
        l.c = standard_normal(p, 1, rng).col(0);
    }
    return l;
}

SimulatedData simulate(const SimConfig& config) {
    config.validate();
    SimulatedData out;
    auto& truth = out.truth;
    auto& panel = out.panel;

    {
        Rng rng(derive_seed(config.seed, kCoefficientStream));
        std::tie(truth.beta, truth.S0) = gen_coefficients(config.p, config.s, config.A, rng);
    }

    for (Index i = 0; i < config.m; ++i) {
        const auto subject = static_cast<std::uint64_t>(i);
        if (i == 0 || config.redraw_loadings) {
            Rng rng(derive_seed(config.seed, {kLoadingStream, config.redraw_loadings ? subject : 0}));
            truth.loadings.push_back(gen_loadings(config.factor_model, config.p, config.r, rng));
        }
        const Loadings& load = truth.loadings.back();

        Rng factor_rng(derive_seed(config.seed, {kFactorStream, subject}));
        Matrix F = gen_factors(config.n, config.r, config.w0, config.w1, factor_rng, config.factor_correlation);

        Rng noise_rng(derive_seed(config.seed, {kFeatureNoiseStream, subject}));
        Matrix X = config.factor_model == FactorModel::linear
                       ? gen_design_linear(F, load.Lambda, noise_rng, config.feature_noise_sd)
                       : gen_design_logistic(F, load.lambdas, load.c, noise_rng, config.feature_noise_sd);

        Rng response_rng(derive_seed(config.seed, {kResponseNoiseStream, subject}));
        panel.y.push_back(gen_response(X, truth.beta, config.link, F, config.confounders, response_rng,
                                       config.noise_sd));
        panel.X.push_back(std::move(X));
        truth.factors.push_back(std::move(F));
    }
    label_defaults(panel);
    return out;
}

namespace {

const std::map<std::string, SimConfig, std::less<>>& presets() {
    static const auto table = [] {
        std::map<std::string, SimConfig, std::less<>> t;
        // Full-size settings: n = 1000, p = 500, s = 10.
        for (auto fm : {FactorModel::linear, FactorModel::logistic}) {
            for (auto link : {Link::linear, Link::nonlinear}) {
                SimConfig c;
                c.factor_model = fm;
                c.link = link;
                t.emplace("full-" + to_string(fm) + "-" + to_string(link), c);
                c.confounders = true;
                t.emplace("full-" + to_string(fm) + "-" + to_string(link) + "-confounder", c);
            }
        }
        // Desk-scale settings.
        SimConfig scaled;
        scaled.n = 400;
        scaled.p = 100;
        t.emplace("scaled-linear-linear", scaled);
        SimConfig null_cfg = scaled;
        null_cfg.s = 0;
        t.emplace("scaled-null", null_cfg);
        SimConfig conf = scaled;
        conf.confounders = true;
        t.emplace("scaled-confounder", conf);
        SimConfig logistic = scaled;
        logistic.factor_model = FactorModel::logistic;
        t.emplace("scaled-logistic-linear", logistic);
        SimConfig multi = scaled;
        multi.m = 4;
        t.emplace("scaled-multi-subject", multi);
        SimConfig tiny;
        tiny.n = 40;
        tiny.p = 8;
        tiny.s = 2;
        t.emplace("tiny", tiny);
        return t;
    }();
    return table;
}

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, cfg] : presets()) {
        names.push_back(name);
    }
    return names;
}

SimConfig preset(std::string_view name) {
    const auto& t = presets();
    auto it = t.find(name);
    if (it == t.end()) {
        std::string known;
        for (const auto& [n, c] : t) {
            known += (known.empty() ? "" : ", ") + n;
        }
        throw ConfigError("unknown preset '" + std::string(name) + "'; known presets: " + known);
    }
    return it->second;
}

} // namespace tsko::sim
