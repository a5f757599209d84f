#include "tsko/nn/layers.hpp"

#include <cmath>

namespace tsko::nn {

Matrix dense_forward(const Matrix& X, const DenseParams& params) {
    require_shape(params.bias.size() == params.outputs(), "dense bias length must equal output width");
    require_shape(X.cols() == params.inputs(), "dense input width " + std::to_string(X.cols()) +
                                                   " does not match weight rows " + std::to_string(params.inputs()));
    Matrix Y(X.rows(), params.outputs());
    Y.noalias() = X * params.W;
    Y.rowwise() += params.bias.transpose();
    return Y;
}

DenseGradients dense_backward(const Matrix& dY, const Matrix& X, const DenseParams& params) {
    require_shape(dY.rows() == X.rows() && dY.cols() == params.outputs(), "dense upstream gradient shape mismatch");
    require_shape(X.cols() == params.inputs(), "dense input width mismatch");
    DenseGradients g;
    g.params.W.noalias() = X.transpose() * dY;
    g.params.bias = dY.colwise().sum().transpose();
    g.dX.noalias() = dY * params.W.transpose();
    return g;
}

Matrix batchnorm_forward(const Matrix& X, BatchNormParams& params, BatchNormMode mode, BatchNormCache* cache) {
    const Index k = params.features();
    require_shape(X.cols() == k, "batch-norm width mismatch");
    require_shape(params.beta.size() == k && params.running_mean.size() == k && params.running_var.size() == k,
                  "batch-norm parameter lengths disagree");
    if (!(params.epsilon > 0.0)) {
        throw ConfigError("batch-norm epsilon must be positive");
    }

    Vector mean;
    Vector var;
    if (mode == BatchNormMode::training) {
        require_shape(X.rows() >= 1, "batch-norm needs a non-empty batch in training mode");
        mean = X.colwise().mean().transpose();
        var = (X.rowwise() - mean.transpose()).array().square().colwise().mean().transpose();
        params.running_mean = params.momentum * params.running_mean + (1.0 - params.momentum) * mean;
        params.running_var = params.momentum * params.running_var + (1.0 - params.momentum) * var;
    } else {
        mean = params.running_mean;
        var = params.running_var;
    }

    Vector inv_std = (var.array() + params.epsilon).rsqrt().matrix();
    Matrix x_hat = (X.rowwise() - mean.transpose()) * inv_std.asDiagonal();
    Matrix Y = x_hat * params.gamma.asDiagonal();
    Y.rowwise() += params.beta.transpose();
    if (cache != nullptr) {
        cache->x_hat = std::move(x_hat);
        cache->inv_std = std::move(inv_std);
    }
    return Y;
}

BatchNormGradients batchnorm_backward(const Matrix& dY, const BatchNormCache& cache, const BatchNormParams& params) {
    require_shape(dY.rows() == cache.x_hat.rows() && dY.cols() == cache.x_hat.cols(),
                  "batch-norm upstream gradient shape mismatch");
    const double n = static_cast<double>(dY.rows());
    BatchNormGradients g;
    g.dbeta = dY.colwise().sum().transpose();
    g.dgamma = dY.cwiseProduct(cache.x_hat).colwise().sum().transpose();
    const Matrix dx_hat = dY * params.gamma.asDiagonal();
    const Eigen::RowVectorXd sum_dx_hat = dx_hat.colwise().sum();
    const Eigen::RowVectorXd sum_dx_hat_xhat = dx_hat.cwiseProduct(cache.x_hat).colwise().sum();
    Matrix centered = (n * dx_hat).rowwise() - sum_dx_hat;
    centered -= cache.x_hat * sum_dx_hat_xhat.asDiagonal();
    g.dX = centered * (cache.inv_std / n).asDiagonal();
    return g;
}

LossResult mse_loss(const Matrix& pred, const Matrix& target) {
    require_shape(pred.rows() == target.rows() && pred.cols() == target.cols(), "loss operands differ in shape");
    LossResult r;
    const auto count = static_cast<double>(pred.size());
    if (count == 0) {
        r.grad = Matrix::Zero(pred.rows(), pred.cols());
        return r;
    }
    const Matrix diff = pred - target;
    r.value = diff.squaredNorm() / count;
    r.grad = (2.0 / count) * diff;
    return r;
}

} // namespace tsko::nn
