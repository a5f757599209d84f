#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsko/panel.hpp"
#include "tsko/rng.hpp"

namespace tsko::sim {

enum class FactorModel { linear, logistic };
enum class Link { linear, nonlinear };

std::string to_string(FactorModel m);
std::string to_string(Link l);
FactorModel parse_factor_model(std::string_view s);
Link parse_link(std::string_view s);

struct SimConfig {
    Index m = 1;
    Index n = 1000;
    Index p = 500;
    Index r = 3;
    Index s = 10;
    double A = 10.0;
    double w0 = 0.3;
    double w1 = 0.7;
    /// Raw factors are N(0, Sigma) with Sigma_ij = rho^|i-j|.
    double factor_correlation = 0.9;
    FactorModel factor_model = FactorModel::linear;
    Link link = Link::linear;
    bool confounders = false;
    /// Standard deviation of the response model error.
    double noise_sd = 1.0;
    /// Standard deviation of the idiosyncratic feature noise.
    double feature_noise_sd = 1.0;
    /// Draw new loadings for every subject instead of sharing one set.
    bool redraw_loadings = false;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Loadings of either factor model; only the fields of the active model are filled.
struct Loadings {
    Matrix Lambda;  // p x r, linear model
    Matrix lambdas; // p x (r + 1), logistic model, column 0 is the intercept
    Vector c;       // p, logistic model
};

struct GroundTruth {
    Vector beta;
    std::vector<std::size_t> S0; // ascending
    std::vector<Matrix> factors; // per subject, n x r
    std::vector<Loadings> loadings;
};

struct SimulatedData {
    TimeSeriesPanel panel;
    GroundTruth truth;
};

Matrix ar1_covariance(Index r, double rho);

/// Applies f_1 = raw_1, f_t = w0 raw_{t-1} + w1 raw_t to the rows of `raw`.
Matrix weight_factors(const Matrix& raw, double w0, double w1);

/// Draws n raw factor rows from N(0, ar1_covariance(r, rho)) and weights them.
Matrix gen_factors(Index n, Index r, double w0, double w1, Rng& rng, double rho = 0.9);

/// X = F Lambda^T + E with E entries N(0, noise_sd^2).
Matrix gen_design_linear(const Matrix& F, const Matrix& Lambda, Rng& noise_rng, double noise_sd = 1.0);

/// x_tk = c_k / (1 + exp([1, f_t] . lambda_k)) + e_tk.
Matrix gen_design_logistic(const Matrix& F, const Matrix& lambdas, const Vector& c, Rng& noise_rng,
                           double noise_sd = 1.0);

/// s distinct indices chosen uniformly, each set to +A or -A with equal odds.
std::pair<Vector, std::vector<std::size_t>> gen_coefficients(Index p, Index s, double A, Rng& rng);

/// y_t = l(x_t beta) [+ mean of the first three factors] + N(0, noise_sd^2).
Vector gen_response(const Matrix& X, const Vector& beta, Link link, const Matrix& F, bool confounders, Rng& noise_rng,
                    double noise_sd = 1.0);

Loadings gen_loadings(FactorModel model, Index p, Index r, Rng& rng);

/// Complete panel and ground truth; a pure function of the config.
SimulatedData simulate(const SimConfig& config);

std::vector<std::string> preset_names();
/// Named configurations; throws ConfigError for unknown names.
SimConfig preset(std::string_view name);

} // namespace tsko::sim
