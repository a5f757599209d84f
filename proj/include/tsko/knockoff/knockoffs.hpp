#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tsko/knockoff/autoencoder.hpp"
#include "tsko/panel.hpp"
#include "tsko/rng.hpp"

namespace tsko::knockoff {

/// Knockoff copy of one subject: X_tilde = C_hat + E_tilde with
/// E_tilde ~ N(0, theta_hat) entrywise.
struct KnockoffResult {
    Matrix C_hat;
    double theta_hat = 0.0;
    Matrix X_tilde;
    std::uint64_t seed = 0;
};

/// Mean squared residual of X - C_hat over all n*p entries.
double estimate_noise_variance(const Matrix& X, const Matrix& C_hat);

Matrix sample_knockoffs(const Matrix& C_hat, double theta_hat, Rng& rng);

struct KnockoffConfig {
    AutoencoderConfig autoencoder{};
    /// Master seed of the noise draws; subject i uses derive_seed(seed, i).
    std::uint64_t seed = 0;
};

struct KnockoffRun {
    std::vector<KnockoffResult> subjects;
    AutoencoderModel model;
};

/// Trains the autoencoder on the panel, then builds one knockoff matrix per
/// subject from its in-sample reconstruction.
KnockoffRun generate_knockoffs(const TimeSeriesPanel& panel, const KnockoffConfig& config);

/// Same subjects and labels as `panel`, features replaced by the knockoffs.
TimeSeriesPanel knockoff_panel(const TimeSeriesPanel& panel, const std::vector<KnockoffResult>& knockoffs);

/// Writes `# theta_hat=<v> seed=<s>` then a header row of feature names and
/// n rows of X_tilde.
void write_knockoff_file(const std::filesystem::path& path, const KnockoffResult& result,
                         const std::vector<std::string>& feature_names);

/// Reads a file written by write_knockoff_file. C_hat is left empty.
KnockoffResult read_knockoff_file(const std::filesystem::path& path, std::vector<std::string>* feature_names = nullptr);

} // namespace tsko::knockoff
