#pragma once

#include <array>
#include <vector>

#include "tsko/nn/types.hpp"

namespace tsko::nn {

enum class Gate : int { forget = 0, input = 1, candidate = 2, output = 3 };

inline constexpr std::array<Gate, 4> kGates{Gate::forget, Gate::input, Gate::candidate, Gate::output};

/**
 * Weights of one LSTM layer with u units reading k inputs.
 *
 * The four gates are stacked row-wise in the order forget, input,
 * candidate, output, so `V` is 4u x k, `U` is 4u x u and `b` has length 4u.
 * Use the per-gate accessors to read a single gate's block.
 */
struct LstmParams {
    Matrix V;
    Matrix U;
    Vector b;

    LstmParams() = default;
    LstmParams(Index inputs, Index units);

    Index units() const { return U.cols(); }
    Index inputs() const { return V.cols(); }

    auto input_weights(Gate g) { return V.middleRows(static_cast<Index>(g) * units(), units()); }
    auto input_weights(Gate g) const { return V.middleRows(static_cast<Index>(g) * units(), units()); }
    auto recurrent_weights(Gate g) { return U.middleRows(static_cast<Index>(g) * units(), units()); }
    auto recurrent_weights(Gate g) const { return U.middleRows(static_cast<Index>(g) * units(), units()); }
    auto bias(Gate g) { return b.segment(static_cast<Index>(g) * units(), units()); }
    auto bias(Gate g) const { return b.segment(static_cast<Index>(g) * units(), units()); }

    void validate() const;
    void set_zero();
};

/// Activations of a single time step, stacked gates after their nonlinearity.
struct StepCache {
    Vector gates; // f, i, c~, o (4u)
    Vector h_prev;
    Vector c_prev;
    Vector c;
    Vector tanh_c;
    Vector h;
};

struct CellOutput {
    Vector h;
    Vector c;
    StepCache cache;
};

CellOutput lstm_cell_forward(const Vector& x, const Vector& h_prev, const Vector& c_prev, const LstmParams& params);

/// Per-step activations of a full sequence, one column per time step.
struct SequenceCache {
    Matrix gates;  // 4u x n
    Matrix c;      // u x n
    Matrix tanh_c; // u x n
    Matrix h;      // u x n
    Vector h0;
    Vector c0;

    Index steps() const { return gates.cols(); }
    StepCache step(Index t) const;
};

struct SequenceOutput {
    Matrix H; // n x u
    SequenceCache cache;
};

/// Runs the cell over the rows of `X` (n x k). The caller supplies the
/// initial state; stateless use passes zeros at every subject boundary.
SequenceOutput lstm_sequence_forward(const Matrix& X, const LstmParams& params, const Vector& h0, const Vector& c0);

/// Forward pass from a zero initial state.
SequenceOutput lstm_sequence_forward(const Matrix& X, const LstmParams& params);

struct LstmGradients {
    LstmParams params; // dV, dU, db
    Matrix dX;         // n x k
};

/// Full (untruncated) backpropagation through time. `dH` holds the loss
/// gradient with respect to each step's hidden state (n x u).
LstmGradients backprop_through_time(const Matrix& dH, const SequenceCache& cache, const LstmParams& params,
                                    const Matrix& X);

double sigmoid(double x);

} // namespace tsko::nn
