#pragma once

#include <cstdint>
#include <vector>

#include "tsko/nn/layers.hpp"
#include "tsko/nn/lstm.hpp"
#include "tsko/nn/optim.hpp"
#include "tsko/panel.hpp"

namespace tsko::knockoff {

struct AutoencoderConfig {
    Index bottleneck = 15;
    int layers_per_side = 1;
    int epochs = 1000;
    nn::AdamConfig adam{};
    std::uint64_t seed = 0;

    void validate() const;
};

/**
 * Sequence autoencoder: encoder LSTM stack (p -> r), decoder LSTM stack
 * (r -> p) and a dense p -> p readout of the decoder hidden states.
 *
 * Every forward pass starts from a zero recurrent state, so subjects never
 * share state.
 */
class Autoencoder {
public:
    Autoencoder(Index features, const AutoencoderConfig& config);

    Index features() const { return output.outputs(); }
    Index bottleneck() const { return encoder.back().units(); }

    Matrix reconstruct(const Matrix& X) const;
    double loss(const Matrix& X) const;

    /// Adds this subject's reconstruction-loss gradients to the gradient
    /// buffers and returns the loss.
    double accumulate_gradients(const Matrix& X);

    std::vector<nn::ParamSlot> parameters();

    std::vector<nn::LstmParams> encoder;
    std::vector<nn::LstmParams> decoder;
    nn::DenseParams output;

private:
    std::vector<nn::LstmParams> encoder_grad_;
    std::vector<nn::LstmParams> decoder_grad_;
    nn::DenseParams output_grad_;
};

struct AutoencoderModel {
    Autoencoder network;
    AutoencoderConfig config;
    double initial_loss = 0.0;
    /// Mean per-subject loss seen during each epoch, before that epoch's updates.
    std::vector<double> epoch_loss;

    double final_loss() const { return epoch_loss.empty() ? initial_loss : epoch_loss.back(); }
};

/// Fits the autoencoder with X as both input and target, one subject per
/// optimizer step.
AutoencoderModel train_autoencoder(const TimeSeriesPanel& panel, const AutoencoderConfig& config);

} // namespace tsko::knockoff
