#pragma once

#include <cmath>
#include <random>

#include "tsko/nn/types.hpp"
#include "tsko/rng.hpp"

namespace tsko::test {

using nn::Index;
using nn::Matrix;
using nn::Vector;

inline Matrix random_matrix(Index rows, Index cols, Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = normal(rng);
        }
    }
    return m;
}

inline Vector random_vector(Index n, Rng& rng, double scale = 1.0) { return random_matrix(n, 1, rng, scale).col(0); }

inline double scalar_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace tsko::test
