#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tsko/nn/layers.hpp"
#include "tsko/nn/lstm.hpp"
#include "tsko/nn/optim.hpp"
#include "tsko/panel.hpp"

namespace tsko::predict {

struct PredictionConfig {
    Index dense_units = 32;
    Index lstm_units = 32;
    bool batch_norm = false;
    /// Shared starting value of both filter weight vectors.
    double filter_init = 0.1;
    int epochs = 1000;
    nn::AdamConfig adam{};
    std::uint64_t seed = 0;
    /// Fit the z-scored response; the readout is mapped back for prediction.
    bool standardize_response = true;
    /// Start the output layer at zero instead of a Glorot draw.
    bool zero_output_init = false;

    void validate() const;
};

/**
 * Filter (pairwise coupling) -> dense -> [batch norm] -> LSTM -> linear
 * readout per time step.
 *
 * The filter layer emits z_j * x_j + z~_j * x~_j into slot j, so a feature
 * and its knockoff compete for the same downstream weights.
 */
class PredictionNetwork {
public:
    PredictionNetwork(Index features, const PredictionConfig& config);

    Index features() const { return z.size(); }

    /// Filter-layer output for one subject.
    Matrix filter(const Matrix& X, const Matrix& X_tilde) const;

    /// Response prediction on the fitted (possibly standardized) scale.
    Vector forward(const Matrix& X, const Matrix& X_tilde, nn::BatchNormMode mode = nn::BatchNormMode::inference);

    /// Adds the gradients of the loss for one subject against `target`
    /// (already on the fitted scale) and returns the loss. Batch
    /// normalization runs in training mode.
    double accumulate_gradients(const Matrix& X, const Matrix& X_tilde, const Vector& target);

    /// Loss without touching gradients; batch norm in training mode with
    /// running statistics left unchanged.
    double loss(const Matrix& X, const Matrix& X_tilde, const Vector& target) const;

    std::vector<nn::ParamSlot> parameters();

    Vector z;
    Vector z_tilde;
    nn::DenseParams dense;
    std::optional<nn::BatchNormParams> batch_norm;
    nn::LstmParams lstm;
    Vector V1;
    Vector output_bias; // length 1

    double response_mean = 0.0;
    double response_scale = 1.0;

private:
    struct Grads {
        Vector z, z_tilde;
        nn::DenseParams dense;
        Vector gamma, beta;
        nn::LstmParams lstm;
        Vector V1, output_bias;
    } grad_;
};

/// Network with both filter vectors at `config.filter_init` and the
/// remaining weights drawn from `seed`.
PredictionNetwork build_prediction_network(Index features, const PredictionConfig& config, std::uint64_t seed);

struct PredictionModel {
    PredictionNetwork network;
    double initial_loss = 0.0;
    std::vector<double> epoch_loss;
};

/// Trains on [X, X_tilde] against y, one subject per optimizer step.
PredictionModel train_prediction_network(const TimeSeriesPanel& data, const TimeSeriesPanel& knockoffs,
                                         const PredictionConfig& config);

/// Same as above but starting from a caller-built network (for custom or
/// mirrored initializations).
PredictionModel train_prediction_network(PredictionNetwork network, const TimeSeriesPanel& data,
                                         const TimeSeriesPanel& knockoffs, const PredictionConfig& config);

} // namespace tsko::predict
