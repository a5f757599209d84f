#include "tsko/predict/statistics.hpp"

#include <cmath>

namespace tsko::predict {

GatePaths gate_path_contributions(const PredictionNetwork& network) {
    Matrix scaled = network.dense.W;
    if (network.batch_norm) {
        scaled = scaled * network.batch_norm->gamma.asDiagonal();
    }
    nn::require_shape(network.V1.size() == network.lstm.units(), "output weights must match the LSTM width");
    GatePaths paths;
    for (auto g : nn::kGates) {
        const Vector through_gate = network.lstm.input_weights(g).transpose() * network.V1;
        paths[static_cast<std::size_t>(g)] = scaled * through_gate;
    }
    return paths;
}

ImportanceScores importance_scores(const GatePaths& paths, const Vector& z, const Vector& z_tilde) {
    const Index p = z.size();
    if (z_tilde.size() != p) {
        throw ShapeError("filter weight vectors differ in length");
    }
    for (const auto& v : paths) {
        if (v.size() != p) {
            throw ShapeError("gate path length differs from the filter width");
        }
    }
    ImportanceScores s{Vector(p), Vector(p)};
    for (Index j = 0; j < p; ++j) {
        double sq = 0.0;
        double sq_tilde = 0.0;
        for (const auto& v : paths) {
            const double a = z[j] * v[j];
            const double b = z_tilde[j] * v[j];
            sq += a * a;
            sq_tilde += b * b;
        }
        s.Z[j] = std::sqrt(sq);
        s.Z_tilde[j] = std::sqrt(sq_tilde);
    }
    return s;
}

ImportanceScores importance_scores(const PredictionNetwork& network) {
    return importance_scores(gate_path_contributions(network), network.z, network.z_tilde);
}

Vector knockoff_statistics(const Vector& Z, const Vector& Z_tilde) {
    if (Z.size() != Z_tilde.size()) {
        throw ShapeError("importance vectors differ in length");
    }
    return (Z.array().square() - Z_tilde.array().square()).matrix();
}

KnockoffStatistics compute_statistics(const PredictionNetwork& network) {
    KnockoffStatistics st;
    st.paths = gate_path_contributions(network);
    auto scores = importance_scores(st.paths, network.z, network.z_tilde);
    st.Z = std::move(scores.Z);
    st.Z_tilde = std::move(scores.Z_tilde);
    st.W = knockoff_statistics(st.Z, st.Z_tilde);
    return st;
}

} // namespace tsko::predict
