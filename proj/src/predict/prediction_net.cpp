#include "tsko/predict/prediction_net.hpp"

#include <cmath>
#include <string>

namespace tsko::predict {

namespace {

struct ForwardTrace {
    Matrix F;
    Matrix D;
    nn::BatchNormCache bn_cache;
    Matrix B;
    nn::SequenceOutput lstm;
    Vector y_hat;
};

ForwardTrace run_forward(const PredictionNetwork& net, std::optional<nn::BatchNormParams>& bn, const Matrix& X,
                         const Matrix& X_tilde, nn::BatchNormMode mode) {
    ForwardTrace tr;
    tr.F = net.filter(X, X_tilde);
    tr.D = nn::dense_forward(tr.F, net.dense);
    if (bn) {
        tr.B = nn::batchnorm_forward(tr.D, *bn, mode, &tr.bn_cache);
    } else {
        tr.B = tr.D;
    }
    tr.lstm = nn::lstm_sequence_forward(tr.B, net.lstm);
    tr.y_hat = tr.lstm.H * net.V1;
    tr.y_hat.array() += net.output_bias[0];
    return tr;
}

} // namespace

void PredictionConfig::validate() const {
    if (dense_units < 1 || lstm_units < 1) {
        throw ConfigError("dense and LSTM widths must be at least 1");
    }
    if (epochs < 0) {
        throw ConfigError("epochs must be non-negative");
    }
    if (!(adam.learning_rate > 0.0)) {
        throw ConfigError("learning rate must be positive");
    }
    if (!std::isfinite(filter_init)) {
        throw ConfigError("filter initialization must be finite");
    }
}

PredictionNetwork::PredictionNetwork(Index features, const PredictionConfig& config) {
    config.validate();
    if (features < 1) {
        throw ConfigError("prediction network needs at least one feature");
    }
    const Index k = config.dense_units;
    const Index u = config.lstm_units;
    z = Vector::Constant(features, config.filter_init);
    z_tilde = Vector::Constant(features, config.filter_init);
    dense = nn::DenseParams(features, k);
    if (config.batch_norm) {
        batch_norm.emplace(k);
    }
    lstm = nn::LstmParams(k, u);
    V1 = Vector::Zero(u);
    output_bias = Vector::Zero(1);

    grad_.z = Vector::Zero(features);
    grad_.z_tilde = Vector::Zero(features);
    grad_.dense = nn::DenseParams(features, k);
    grad_.gamma = Vector::Zero(k);
    grad_.beta = Vector::Zero(k);
    grad_.lstm = nn::LstmParams(k, u);
    grad_.V1 = Vector::Zero(u);
    grad_.output_bias = Vector::Zero(1);
}

Matrix PredictionNetwork::filter(const Matrix& X, const Matrix& X_tilde) const {
    const Index p = features();
    if (X.cols() != p || X_tilde.cols() != p || X.rows() != X_tilde.rows()) {
        throw ShapeError("filter layer expects X and X_tilde of shape n x " + std::to_string(p));
    }
    Matrix F(X.rows(), p);
    // Scalar loop: feature j and knockoff j combine identically whichever
    // side each sits on, which keeps swapped runs bitwise mirrored.
    for (Index j = 0; j < p; ++j) {
        for (Index t = 0; t < X.rows(); ++t) {
            F(t, j) = z[j] * X(t, j) + z_tilde[j] * X_tilde(t, j);
        }
    }
    return F;
}

Vector PredictionNetwork::forward(const Matrix& X, const Matrix& X_tilde, nn::BatchNormMode mode) {
    return run_forward(*this, batch_norm, X, X_tilde, mode).y_hat;
}

double PredictionNetwork::loss(const Matrix& X, const Matrix& X_tilde, const Vector& target) const {
    auto bn = batch_norm;
    const auto tr = run_forward(*this, bn, X, X_tilde, nn::BatchNormMode::training);
    return nn::mse_loss(tr.y_hat, target).value;
}

double PredictionNetwork::accumulate_gradients(const Matrix& X, const Matrix& X_tilde, const Vector& target) {
    if (target.size() != X.rows()) {
        throw ShapeError("response length does not match the number of time points");
    }
    const auto tr = run_forward(*this, batch_norm, X, X_tilde, nn::BatchNormMode::training);
    const auto l = nn::mse_loss(tr.y_hat, target);
    const Vector dy = l.grad.col(0);

    grad_.V1.noalias() += tr.lstm.H.transpose() * dy;
    grad_.output_bias[0] += dy.sum();
    const Matrix dH = dy * V1.transpose();

    auto lg = nn::backprop_through_time(dH, tr.lstm.cache, lstm, tr.B);
    grad_.lstm.V += lg.params.V;
    grad_.lstm.U += lg.params.U;
    grad_.lstm.b += lg.params.b;

    Matrix dD;
    if (batch_norm) {
        auto bg = nn::batchnorm_backward(lg.dX, tr.bn_cache, *batch_norm);
        grad_.gamma += bg.dgamma;
        grad_.beta += bg.dbeta;
        dD = std::move(bg.dX);
    } else {
        dD = std::move(lg.dX);
    }

    auto dg = nn::dense_backward(dD, tr.F, dense);
    grad_.dense.W += dg.params.W;
    grad_.dense.bias += dg.params.bias;

    const Matrix& dF = dg.dX;
    for (Index j = 0; j < features(); ++j) {
        double gz = 0.0;
        double gzt = 0.0;
        for (Index t = 0; t < X.rows(); ++t) {
            gz += X(t, j) * dF(t, j);
            gzt += X_tilde(t, j) * dF(t, j);
        }
        grad_.z[j] += gz;
        grad_.z_tilde[j] += gzt;
    }
    return l.value;
}

std::vector<nn::ParamSlot> PredictionNetwork::parameters() {
    std::vector<nn::ParamSlot> slots{
        {"filter.z", nn::flat(z), nn::flat(grad_.z)},
        {"filter.z_tilde", nn::flat(z_tilde), nn::flat(grad_.z_tilde)},
        {"dense.W", nn::flat(dense.W), nn::flat(grad_.dense.W)},
        {"dense.bias", nn::flat(dense.bias), nn::flat(grad_.dense.bias)},
    };
    if (batch_norm) {
        slots.push_back({"batch_norm.gamma", nn::flat(batch_norm->gamma), nn::flat(grad_.gamma)});
        slots.push_back({"batch_norm.beta", nn::flat(batch_norm->beta), nn::flat(grad_.beta)});
    }
    slots.push_back({"lstm.V", nn::flat(lstm.V), nn::flat(grad_.lstm.V)});
    slots.push_back({"lstm.U", nn::flat(lstm.U), nn::flat(grad_.lstm.U)});
    slots.push_back({"lstm.b", nn::flat(lstm.b), nn::flat(grad_.lstm.b)});
    slots.push_back({"output.V1", nn::flat(V1), nn::flat(grad_.V1)});
    slots.push_back({"output.bias", nn::flat(output_bias), nn::flat(grad_.output_bias)});
    return slots;
}

PredictionNetwork build_prediction_network(Index features, const PredictionConfig& config, std::uint64_t seed) {
    PredictionNetwork net(features, config);
    Rng rng(seed);
    const Index k = config.dense_units;
    const Index u = config.lstm_units;
    nn::glorot_uniform(net.dense.W, features, k, rng);
    nn::glorot_uniform(net.lstm.V, k, 4 * u, rng);
    nn::glorot_uniform(net.lstm.U, u, 4 * u, rng);
    if (!config.zero_output_init) {
        Matrix v1(u, 1);
        nn::glorot_uniform(v1, u, 1, rng);
        net.V1 = v1.col(0);
    }
    return net;
}

namespace {

void check_pair(const TimeSeriesPanel& data, const TimeSeriesPanel& knockoffs) {
    data.validate(true);
    knockoffs.validate();
    if (knockoffs.subjects() != data.subjects() || knockoffs.time_points() != data.time_points() ||
        knockoffs.features() != data.features()) {
        throw ShapeError("knockoff panel shape differs from the data panel");
    }
}

} // namespace

PredictionModel train_prediction_network(const TimeSeriesPanel& data, const TimeSeriesPanel& knockoffs,
                                         const PredictionConfig& config) {
    check_pair(data, knockoffs);
    return train_prediction_network(build_prediction_network(data.features(), config, config.seed), data, knockoffs,
                                    config);
}

PredictionModel train_prediction_network(PredictionNetwork network, const TimeSeriesPanel& data,
                                         const TimeSeriesPanel& knockoffs, const PredictionConfig& config) {
    check_pair(data, knockoffs);
    if (network.features() != data.features()) {
        throw ShapeError("network width does not match the panel");
    }
    PredictionModel model{std::move(network), 0.0, {}};
    auto& net = model.network;

    std::vector<Vector> targets = data.y;
    if (config.standardize_response) {
        double sum = 0.0;
        double count = 0.0;
        for (const auto& y : data.y) {
            sum += y.sum();
            count += static_cast<double>(y.size());
        }
        const double mean = sum / count;
        double ss = 0.0;
        for (const auto& y : data.y) {
            ss += (y.array() - mean).square().sum();
        }
        const double sd = std::sqrt(ss / count);
        net.response_mean = mean;
        net.response_scale = sd > 0.0 ? sd : 1.0;
        for (auto& y : targets) {
            y = ((y.array() - net.response_mean) / net.response_scale).matrix();
        }
    }

    auto slots = net.parameters();
    nn::OptimizerState state(config.adam);
    const double m = static_cast<double>(data.subjects());

    double total = 0.0;
    for (Index i = 0; i < data.subjects(); ++i) {
        total += net.loss(data.X[i], knockoffs.X[i], targets[i]);
    }
    model.initial_loss = total / m;

    model.epoch_loss.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_total = 0.0;
        for (Index i = 0; i < data.subjects(); ++i) {
            nn::zero_grads(slots);
            epoch_total += net.accumulate_gradients(data.X[i], knockoffs.X[i], targets[i]);
            nn::adam_step(slots, state);
        }
        const double mean_loss = epoch_total / m;
        if (!std::isfinite(mean_loss)) {
            throw NumericError("prediction loss became non-finite at epoch " + std::to_string(epoch + 1));
        }
        model.epoch_loss.push_back(mean_loss);
    }
    return model;
}

} // namespace tsko::predict
