#pragma once

#include <array>

#include "tsko/predict/prediction_net.hpp"

namespace tsko::predict {

/// Per-gate contribution of each input slot to the readout, indexed by
/// nn::Gate: v_g = (W0 .* Gamma) Vg^T V1, a p-vector per gate.
using GatePaths = std::array<Vector, 4>;

/// Gamma is the batch-norm scale broadcast over rows; it is dropped when the
/// network has no batch normalization.
GatePaths gate_path_contributions(const PredictionNetwork& network);

struct ImportanceScores {
    Vector Z;
    Vector Z_tilde;
};

/// Z_j = || z_j * (v_f, v_i, v_c, v_o)_j ||_2, and likewise with z~.
ImportanceScores importance_scores(const GatePaths& paths, const Vector& z, const Vector& z_tilde);
ImportanceScores importance_scores(const PredictionNetwork& network);

/// W_j = Z_j^2 - Z~_j^2.
Vector knockoff_statistics(const Vector& Z, const Vector& Z_tilde);

struct KnockoffStatistics {
    GatePaths paths;
    Vector Z;
    Vector Z_tilde;
    Vector W;
};

KnockoffStatistics compute_statistics(const PredictionNetwork& network);

} // namespace tsko::predict
