#include "tsko/knockoff/knockoffs.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace tsko::knockoff {

double estimate_noise_variance(const Matrix& X, const Matrix& C_hat) {
    if (X.rows() != C_hat.rows() || X.cols() != C_hat.cols()) {
        throw ShapeError("reconstruction and data differ in shape");
    }
    if (X.size() == 0) {
        throw ShapeError("cannot estimate a variance from an empty matrix");
    }
    return (X - C_hat).squaredNorm() / static_cast<double>(X.size());
}

Matrix sample_knockoffs(const Matrix& C_hat, double theta_hat, Rng& rng) {
    if (!(theta_hat >= 0.0) || !std::isfinite(theta_hat)) {
        throw NumericError("noise variance must be finite and non-negative");
    }
    Matrix X_tilde = C_hat;
    if (theta_hat == 0.0) {
        return X_tilde;
    }
    std::normal_distribution<double> noise(0.0, std::sqrt(theta_hat));
    for (Index t = 0; t < X_tilde.rows(); ++t) {
        for (Index k = 0; k < X_tilde.cols(); ++k) {
            X_tilde(t, k) += noise(rng);
        }
    }
    return X_tilde;
}

KnockoffRun generate_knockoffs(const TimeSeriesPanel& panel, const KnockoffConfig& config) {
    KnockoffRun run{{}, train_autoencoder(panel, config.autoencoder)};
    run.subjects.reserve(panel.X.size());
    for (std::size_t i = 0; i < panel.X.size(); ++i) {
        KnockoffResult r;
        r.C_hat = run.model.network.reconstruct(panel.X[i]);
        if (!r.C_hat.allFinite()) {
            throw NumericError("autoencoder reconstruction is not finite");
        }
        r.theta_hat = estimate_noise_variance(panel.X[i], r.C_hat);
        r.seed = derive_seed(config.seed, i);
        Rng rng(r.seed);
        r.X_tilde = sample_knockoffs(r.C_hat, r.theta_hat, rng);
        run.subjects.push_back(std::move(r));
    }
    return run;
}

TimeSeriesPanel knockoff_panel(const TimeSeriesPanel& panel, const std::vector<KnockoffResult>& knockoffs) {
    if (knockoffs.size() != panel.X.size()) {
        throw ShapeError("knockoff count does not match subject count");
    }
    TimeSeriesPanel out = panel;
    for (std::size_t i = 0; i < knockoffs.size(); ++i) {
        if (knockoffs[i].X_tilde.rows() != panel.X[i].rows() || knockoffs[i].X_tilde.cols() != panel.X[i].cols()) {
            throw ShapeError("knockoff of subject " + std::to_string(i) + " has the wrong shape");
        }
        out.X[i] = knockoffs[i].X_tilde;
    }
    return out;
}

void write_knockoff_file(const std::filesystem::path& path, const KnockoffResult& result,
                         const std::vector<std::string>& feature_names) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    out << fmt::format("# theta_hat={:.17g} seed={}\n", result.theta_hat, result.seed);
    const Index p = result.X_tilde.cols();
    for (Index k = 0; k < p; ++k) {
        if (k > 0) {
            out << ',';
        }
        out << (static_cast<std::size_t>(k) < feature_names.size() ? feature_names[k] : "x" + std::to_string(k + 1));
    }
    out << '\n';
    for (Index t = 0; t < result.X_tilde.rows(); ++t) {
        for (Index k = 0; k < p; ++k) {
            out << (k > 0 ? "," : "") << fmt::format("{:.17g}", result.X_tilde(t, k));
        }
        out << '\n';
    }
}

KnockoffResult read_knockoff_file(const std::filesystem::path& path, std::vector<std::string>* feature_names) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open knockoff file " + path.string());
    }
    KnockoffResult r;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw DataError(path.string() + ":1: missing '# theta_hat=... seed=...' header");
    }
    {
        std::istringstream hs(line.substr(2));
        std::string token;
        bool have_theta = false;
        bool have_seed = false;
        while (hs >> token) {
            if (token.rfind("theta_hat=", 0) == 0) {
                r.theta_hat = std::stod(token.substr(10));
                have_theta = true;
            } else if (token.rfind("seed=", 0) == 0) {
                r.seed = std::stoull(token.substr(5));
                have_seed = true;
            }
        }
        if (!have_theta || !have_seed) {
            throw DataError(path.string() + ":1: header lacks theta_hat or seed");
        }
    }
    if (!std::getline(in, line)) {
        throw DataError(path.string() + ":2: missing column header");
    }
    std::vector<std::string> names;
    {
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            names.push_back(cell);
        }
    }
    std::vector<std::vector<double>> rows;
    int line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric value '" + cell + "'");
            }
        }
        if (row.size() != names.size()) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(names.size()) + " values");
        }
        rows.push_back(std::move(row));
    }
    r.X_tilde.resize(static_cast<Index>(rows.size()), static_cast<Index>(names.size()));
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::size_t k = 0; k < names.size(); ++k) {
            r.X_tilde(static_cast<Index>(t), static_cast<Index>(k)) = rows[t][k];
        }
    }
    if (feature_names != nullptr) {
        *feature_names = std::move(names);
    }
    return r;
}

} // namespace tsko::knockoff
