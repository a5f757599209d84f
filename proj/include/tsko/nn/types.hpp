#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "tsko/errors.hpp"

namespace tsko::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A trainable tensor seen as a flat span, paired with its gradient buffer.
struct ParamSlot {
    std::string name;
    std::span<double> value;
    std::span<double> grad;
};

template <typename Derived>
std::span<double> flat(Eigen::PlainObjectBase<Derived>& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

inline void require_shape(bool ok, const std::string& what) {
    if (!ok) {
        throw ShapeError(what);
    }
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

} // namespace tsko::nn
