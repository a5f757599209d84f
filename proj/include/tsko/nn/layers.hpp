#pragma once

#include "tsko/nn/types.hpp"

namespace tsko::nn {

/// Affine map applied row-wise: Y = X W + 1 b^T, with W stored in x out.
struct DenseParams {
    Matrix W;
    Vector bias;

    DenseParams() = default;
    DenseParams(Index inputs, Index outputs) : W(Matrix::Zero(inputs, outputs)), bias(Vector::Zero(outputs)) {}

    Index inputs() const { return W.rows(); }
    Index outputs() const { return W.cols(); }
};

struct DenseGradients {
    DenseParams params;
    Matrix dX;
};

Matrix dense_forward(const Matrix& X, const DenseParams& params);
DenseGradients dense_backward(const Matrix& dY, const Matrix& X, const DenseParams& params);

enum class BatchNormMode { training, inference };

/// Per-feature normalization over the rows (time steps) of a batch.
struct BatchNormParams {
    Vector gamma;
    Vector beta;
    Vector running_mean;
    Vector running_var;
    double epsilon = 1e-3;
    double momentum = 0.99;

    BatchNormParams() = default;
    explicit BatchNormParams(Index features)
        : gamma(Vector::Ones(features)), beta(Vector::Zero(features)), running_mean(Vector::Zero(features)),
          running_var(Vector::Ones(features)) {}

    Index features() const { return gamma.size(); }
};

struct BatchNormCache {
    Matrix x_hat;
    Vector inv_std;
};

/// Training mode normalizes with batch statistics and folds them into the
/// running estimates; inference mode uses the running estimates only.
Matrix batchnorm_forward(const Matrix& X, BatchNormParams& params, BatchNormMode mode, BatchNormCache* cache = nullptr);

struct BatchNormGradients {
    Vector dgamma;
    Vector dbeta;
    Matrix dX;
};

/// Backward pass of the training-mode transform.
BatchNormGradients batchnorm_backward(const Matrix& dY, const BatchNormCache& cache, const BatchNormParams& params);

struct LossResult {
    double value = 0.0;
    Matrix grad;
};

/// Mean of squared residuals over all entries, with its gradient w.r.t. `pred`.
LossResult mse_loss(const Matrix& pred, const Matrix& target);

} // namespace tsko::nn
