#include "tsko/knockoff/autoencoder.hpp"

#include <cmath>
#include <string>

namespace tsko::knockoff {

namespace {

nn::LstmParams init_lstm(Index inputs, Index units, Rng& rng) {
    nn::LstmParams p(inputs, units);
    nn::glorot_uniform(p.V, inputs, 4 * units, rng);
    nn::glorot_uniform(p.U, units, 4 * units, rng);
    return p;
}

nn::LstmParams zeros_like(const nn::LstmParams& p) { return nn::LstmParams(p.inputs(), p.units()); }

void add_lstm(nn::LstmParams& acc, const nn::LstmParams& g) {
    acc.V += g.V;
    acc.U += g.U;
    acc.b += g.b;
}

void push_lstm_slots(std::vector<nn::ParamSlot>& slots, const std::string& prefix, nn::LstmParams& p,
                     nn::LstmParams& g) {
    slots.push_back({prefix + ".V", nn::flat(p.V), nn::flat(g.V)});
    slots.push_back({prefix + ".U", nn::flat(p.U), nn::flat(g.U)});
    slots.push_back({prefix + ".b", nn::flat(p.b), nn::flat(g.b)});
}

} // namespace

void AutoencoderConfig::validate() const {
    if (bottleneck < 1) {
        throw ConfigError("bottleneck width must be at least 1");
    }
    if (layers_per_side < 1) {
        throw ConfigError("autoencoder needs at least one LSTM layer per side");
    }
    if (epochs < 0) {
        throw ConfigError("epochs must be non-negative");
    }
    if (!(adam.learning_rate > 0.0)) {
        throw ConfigError("learning rate must be positive");
    }
}

Autoencoder::Autoencoder(Index features, const AutoencoderConfig& config) {
    config.validate();
    if (features < 1) {
        throw ConfigError("autoencoder needs at least one feature");
    }
    Rng rng(config.seed);
    const Index r = config.bottleneck;
    for (int l = 0; l < config.layers_per_side; ++l) {
        encoder.push_back(init_lstm(l == 0 ? features : r, r, rng));
    }
    for (int l = 0; l < config.layers_per_side; ++l) {
        decoder.push_back(init_lstm(l == 0 ? r : features, features, rng));
    }
    output = nn::DenseParams(features, features);
    nn::glorot_uniform(output.W, features, features, rng);

    for (const auto& p : encoder) {
        encoder_grad_.push_back(zeros_like(p));
    }
    for (const auto& p : decoder) {
        decoder_grad_.push_back(zeros_like(p));
    }
    output_grad_ = nn::DenseParams(features, features);
}

Matrix Autoencoder::reconstruct(const Matrix& X) const {
    Matrix h = X;
    for (const auto& layer : encoder) {
        h = nn::lstm_sequence_forward(h, layer).H;
    }
    for (const auto& layer : decoder) {
        h = nn::lstm_sequence_forward(h, layer).H;
    }
    return nn::dense_forward(h, output);
}

double Autoencoder::loss(const Matrix& X) const { return nn::mse_loss(reconstruct(X), X).value; }

double Autoencoder::accumulate_gradients(const Matrix& X) {
    std::vector<Matrix> inputs;
    std::vector<nn::SequenceCache> caches;
    const std::size_t layers = encoder.size() + decoder.size();
    inputs.reserve(layers + 1);
    caches.reserve(layers);

    inputs.push_back(X);
    auto run = [&](const nn::LstmParams& layer) {
        auto out = nn::lstm_sequence_forward(inputs.back(), layer);
        caches.push_back(std::move(out.cache));
        inputs.push_back(std::move(out.H));
    };
    for (const auto& layer : encoder) {
        run(layer);
    }
    for (const auto& layer : decoder) {
        run(layer);
    }
    const Matrix recon = nn::dense_forward(inputs.back(), output);
    const auto l = nn::mse_loss(recon, X);

    auto dense = nn::dense_backward(l.grad, inputs.back(), output);
    output_grad_.W += dense.params.W;
    output_grad_.bias += dense.params.bias;

    Matrix upstream = std::move(dense.dX);
    for (std::size_t idx = layers; idx-- > 0;) {
        const bool is_decoder = idx >= encoder.size();
        const auto& params = is_decoder ? decoder[idx - encoder.size()] : encoder[idx];
        auto g = nn::backprop_through_time(upstream, caches[idx], params, inputs[idx]);
        add_lstm(is_decoder ? decoder_grad_[idx - encoder.size()] : encoder_grad_[idx], g.params);
        upstream = std::move(g.dX);
    }
    return l.value;
}

std::vector<nn::ParamSlot> Autoencoder::parameters() {
    std::vector<nn::ParamSlot> slots;
    for (std::size_t l = 0; l < encoder.size(); ++l) {
        push_lstm_slots(slots, "encoder" + std::to_string(l), encoder[l], encoder_grad_[l]);
    }
    for (std::size_t l = 0; l < decoder.size(); ++l) {
        push_lstm_slots(slots, "decoder" + std::to_string(l), decoder[l], decoder_grad_[l]);
    }
    slots.push_back({"output.W", nn::flat(output.W), nn::flat(output_grad_.W)});
    slots.push_back({"output.bias", nn::flat(output.bias), nn::flat(output_grad_.bias)});
    return slots;
}

AutoencoderModel train_autoencoder(const TimeSeriesPanel& panel, const AutoencoderConfig& config) {
    panel.validate();
    if (panel.time_points() < 2) {
        throw DataError("autoencoder training needs at least two time points");
    }
    AutoencoderModel model{Autoencoder(panel.features(), config), config, 0.0, {}};
    auto slots = model.network.parameters();
    nn::OptimizerState state(config.adam);
    const double m = static_cast<double>(panel.subjects());

    double total = 0.0;
    for (const auto& X : panel.X) {
        total += model.network.loss(X);
    }
    model.initial_loss = total / m;

    model.epoch_loss.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_total = 0.0;
        for (const auto& X : panel.X) {
            nn::zero_grads(slots);
            epoch_total += model.network.accumulate_gradients(X);
            nn::adam_step(slots, state);
        }
        const double mean_loss = epoch_total / m;
        if (!std::isfinite(mean_loss)) {
            throw NumericError("autoencoder loss became non-finite at epoch " + std::to_string(epoch + 1));
        }
        model.epoch_loss.push_back(mean_loss);
    }
    return model;
}

} // namespace tsko::knockoff
