#include "tsko/nn/lstm.hpp"

#include <cmath>
#include <string>

namespace tsko::nn {

namespace {

// Applies the gate nonlinearities in place to a stacked pre-activation.
template <typename V>
void activate(V&& z, Index u) {
    for (Index r = 0; r < 2 * u; ++r) {
        z[r] = sigmoid(z[r]);
    }
    for (Index r = 2 * u; r < 3 * u; ++r) {
        z[r] = std::tanh(z[r]);
    }
    for (Index r = 3 * u; r < 4 * u; ++r) {
        z[r] = sigmoid(z[r]);
    }
}

std::string dims(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

} // namespace

double sigmoid(double x) {
    if (x >= 0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

LstmParams::LstmParams(Index inputs, Index units)
    : V(Matrix::Zero(4 * units, inputs)), U(Matrix::Zero(4 * units, units)), b(Vector::Zero(4 * units)) {}

void LstmParams::validate() const {
    const Index u = U.cols();
    require_shape(u >= 1, "LSTM needs at least one unit");
    require_shape(U.rows() == 4 * u, "recurrent weights must be 4u x u, got " + dims(U.rows(), U.cols()));
    require_shape(V.rows() == 4 * u, "input weights must be 4u x k, got " + dims(V.rows(), V.cols()));
    require_shape(b.size() == 4 * u, "bias must have length 4u");
}

void LstmParams::set_zero() {
    V.setZero();
    U.setZero();
    b.setZero();
}

CellOutput lstm_cell_forward(const Vector& x, const Vector& h_prev, const Vector& c_prev, const LstmParams& params) {
    params.validate();
    const Index u = params.units();
    require_shape(x.size() == params.inputs(), "cell input width does not match the input weights");
    require_shape(h_prev.size() == u && c_prev.size() == u, "cell state width does not match the unit count");

    CellOutput out;
    StepCache& s = out.cache;
    s.gates = params.V * x + params.U * h_prev + params.b;
    activate(s.gates, u);
    const auto f = s.gates.segment(0, u).array();
    const auto i = s.gates.segment(u, u).array();
    const auto g = s.gates.segment(2 * u, u).array();
    const auto o = s.gates.segment(3 * u, u).array();
    s.h_prev = h_prev;
    s.c_prev = c_prev;
    s.c = (f * c_prev.array() + i * g).matrix();
    s.tanh_c = s.c.array().tanh().matrix();
    s.h = (o * s.tanh_c.array()).matrix();
    out.h = s.h;
    out.c = s.c;
    return out;
}

StepCache SequenceCache::step(Index t) const {
    StepCache s;
    s.gates = gates.col(t);
    s.h_prev = t == 0 ? h0 : Vector(h.col(t - 1));
    s.c_prev = t == 0 ? c0 : Vector(c.col(t - 1));
    s.c = c.col(t);
    s.tanh_c = tanh_c.col(t);
    s.h = h.col(t);
    return s;
}

SequenceOutput lstm_sequence_forward(const Matrix& X, const LstmParams& params, const Vector& h0, const Vector& c0) {
    params.validate();
    const Index u = params.units();
    const Index n = X.rows();
    require_shape(X.cols() == params.inputs(),
                  "sequence width " + std::to_string(X.cols()) + " does not match LSTM input width " +
                      std::to_string(params.inputs()));
    require_shape(h0.size() == u && c0.size() == u, "initial state width does not match the unit count");

    SequenceOutput out;
    SequenceCache& cache = out.cache;
    cache.h0 = h0;
    cache.c0 = c0;
    cache.gates.noalias() = params.V * X.transpose();
    cache.gates.colwise() += params.b;
    cache.c.resize(u, n);
    cache.tanh_c.resize(u, n);
    cache.h.resize(u, n);

    Vector z(4 * u);
    for (Index t = 0; t < n; ++t) {
        if (t == 0) {
            z.noalias() = params.U * h0;
        } else {
            z.noalias() = params.U * cache.h.col(t - 1);
        }
        auto gate = cache.gates.col(t);
        gate += z;
        activate(gate, u);
        const auto f = gate.segment(0, u).array();
        const auto i = gate.segment(u, u).array();
        const auto g = gate.segment(2 * u, u).array();
        const auto o = gate.segment(3 * u, u).array();
        if (t == 0) {
            cache.c.col(t) = (f * c0.array() + i * g).matrix();
        } else {
            cache.c.col(t) = (f * cache.c.col(t - 1).array() + i * g).matrix();
        }
        cache.tanh_c.col(t) = cache.c.col(t).array().tanh().matrix();
        cache.h.col(t) = (o * cache.tanh_c.col(t).array()).matrix();
    }
    out.H = cache.h.transpose();
    return out;
}

SequenceOutput lstm_sequence_forward(const Matrix& X, const LstmParams& params) {
    const Index u = params.units();
    return lstm_sequence_forward(X, params, Vector::Zero(u), Vector::Zero(u));
}

LstmGradients backprop_through_time(const Matrix& dH, const SequenceCache& cache, const LstmParams& params,
                                    const Matrix& X) {
    params.validate();
    const Index u = params.units();
    const Index n = cache.steps();
    require_shape(dH.rows() == n && dH.cols() == u, "upstream gradient must be n x u and match the cached steps");
    require_shape(X.rows() == n && X.cols() == params.inputs(), "input sequence does not match the cached steps");

    Matrix dZ(4 * u, n);
    Vector dh_next = Vector::Zero(u);
    Vector dc_next = Vector::Zero(u);
    Vector dh(u);
    Vector dc(u);

    for (Index t = n - 1; t >= 0; --t) {
        const auto gate = cache.gates.col(t);
        const auto f = gate.segment(0, u).array();
        const auto i = gate.segment(u, u).array();
        const auto g = gate.segment(2 * u, u).array();
        const auto o = gate.segment(3 * u, u).array();
        const auto tc = cache.tanh_c.col(t).array();
        const Eigen::Ref<const Vector> c_prev_ref = t == 0 ? Eigen::Ref<const Vector>(cache.c0)
                                                            : Eigen::Ref<const Vector>(cache.c.col(t - 1));
        const auto c_prev = c_prev_ref.array();

        dh = dH.row(t).transpose() + dh_next;
        dc = (dh.array() * o * (1.0 - tc * tc)).matrix() + dc_next;

        auto dz = dZ.col(t);
        dz.segment(0, u) = (dc.array() * c_prev * f * (1.0 - f)).matrix();
        dz.segment(u, u) = (dc.array() * g * i * (1.0 - i)).matrix();
        dz.segment(2 * u, u) = (dc.array() * i * (1.0 - g * g)).matrix();
        dz.segment(3 * u, u) = (dh.array() * tc * o * (1.0 - o)).matrix();

        dc_next = (dc.array() * f).matrix();
        dh_next.noalias() = params.U.transpose() * dz;
    }

    LstmGradients grads;
    grads.params.V.noalias() = dZ * X;
    grads.params.b = dZ.rowwise().sum();
    grads.params.U.resize(4 * u, u);
    if (n > 0) {
        grads.params.U.noalias() = dZ.col(0) * cache.h0.transpose();
        if (n > 1) {
            grads.params.U.noalias() += dZ.rightCols(n - 1) * cache.h.leftCols(n - 1).transpose();
        }
    } else {
        grads.params.U.setZero();
    }
    grads.dX.noalias() = dZ.transpose() * params.V;
    return grads;
}

} // namespace tsko::nn
