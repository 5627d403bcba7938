#include "clothrl/numerics/mlp.hpp"

#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::numerics {

std::string to_string(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Relu: return "relu";
        case Activation::Tanh: return "tanh";
    }
    return "?";
}

Activation activation_from_string(const std::string& s) {
    if (s == "identity") return Activation::Identity;
    if (s == "relu") return Activation::Relu;
    if (s == "tanh") return Activation::Tanh;
    throw ConfigError("unknown activation: " + s);
}

std::size_t ParamSet::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
    return n;
}

bool ParamSet::same_shape(const ParamSet& o) const {
    if (layer_sizes != o.layer_sizes) return false;
    return hidden == o.hidden && output == o.output;
}

bool ParamSet::all_finite() const {
    for (const auto& w : weights)
        for (const double v : w.data())
            if (!std::isfinite(v)) return false;
    for (const auto& b : biases)
        for (const double v : b)
            if (!std::isfinite(v)) return false;
    return true;
}

ParamGrads ParamGrads::zeros_like(const ParamSet& p) {
    ParamGrads g;
    g.weights.reserve(p.weights.size());
    g.biases.reserve(p.biases.size());
    for (std::size_t l = 0; l < p.weights.size(); ++l) {
        g.weights.emplace_back(p.weights[l].rows(), p.weights[l].cols());
        g.biases.emplace_back(p.biases[l].size(), 0.0);
    }
    return g;
}

void ParamGrads::scale(double s) {
    for (auto& w : weights)
        for (auto& v : w.data()) v *= s;
    for (auto& b : biases)
        for (auto& v : b) v *= s;
}

bool ParamGrads::all_finite() const {
    for (const auto& w : weights)
        for (const double v : w.data())
            if (!std::isfinite(v)) return false;
    for (const auto& b : biases)
        for (const double v : b)
            if (!std::isfinite(v)) return false;
    return true;
}

ParamSet mlp_init(const std::vector<int>& layer_sizes, Activation hidden, Activation output,
                  Rng& rng, double final_layer_scale) {
    if (layer_sizes.size() < 2)
        throw ConfigError("mlp_init: need at least an input and an output layer");
    for (const int s : layer_sizes)
        if (s <= 0) throw ConfigError("mlp_init: layer sizes must be positive");

    ParamSet p;
    p.layer_sizes = layer_sizes;
    p.hidden = hidden;
    p.output = output;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        const bool last = l + 2 == layer_sizes.size();
        const double bound = (last ? final_layer_scale : 1.0) / std::sqrt(double(fan_in));
        Matrix w(fan_out, fan_in);
        for (auto& v : w.data()) v = rng.uniform(-bound, bound);
        p.weights.push_back(std::move(w));
        p.biases.emplace_back(fan_out, 0.0);
    }
    return p;
}

namespace {

inline double activate(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return z;
        case Activation::Relu: return z > 0.0 ? z : 0.0;
        case Activation::Tanh: {
            // Keep outputs strictly inside (-1, 1) even where std::tanh
            // saturates to +-1 in double precision.
            const double y = std::tanh(z);
            if (y >= 1.0) return std::nextafter(1.0, 0.0);
            if (y <= -1.0) return std::nextafter(-1.0, 0.0);
            return y;
        }
    }
    return z;
}

// Derivative expressed in terms of pre-activation z and activation y.
inline double activate_deriv(Activation a, double z, double y) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::Tanh: return 1.0 - y * y;
    }
    return 1.0;
}

}  // namespace

Matrix forward_batch(const ParamSet& params, const Matrix& inputs, ForwardTrace* trace) {
    if (inputs.cols() != static_cast<std::size_t>(params.input_size()))
        throw ShapeError("forward: input width " + std::to_string(inputs.cols()) +
                         " != first layer size " + std::to_string(params.input_size()));
    const std::size_t batch = inputs.rows();
    const std::size_t depth = params.depth();

    if (trace) {
        trace->inputs = inputs;
        trace->pre.assign(depth, Matrix());
        trace->act.assign(depth, Matrix());
    }

    Matrix current = inputs;
    for (std::size_t l = 0; l < depth; ++l) {
        const Matrix& w = params.weights[l];
        const auto& b = params.biases[l];
        const std::size_t out_n = w.rows();
        const Activation a = (l + 1 == depth) ? params.output : params.hidden;

        Matrix z(batch, out_n);
        for (std::size_t r = 0; r < batch; ++r) {
            const double* in_row = current.row(r);
            double* z_row = z.row(r);
            for (std::size_t o = 0; o < out_n; ++o)
                z_row[o] = b[o] + dot(in_row, w.row(o), w.cols());
        }
        Matrix y(batch, out_n);
        for (std::size_t i = 0; i < z.size(); ++i) y.data()[i] = activate(a, z.data()[i]);

        if (trace) {
            trace->pre[l] = z;
            trace->act[l] = y;
        }
        current = std::move(y);
    }
    return current;
}

std::vector<double> forward(const ParamSet& params, std::span<const double> input,
                            ForwardTrace* trace) {
    const Matrix out = forward_batch(params, Matrix::from_row(input), trace);
    return {out.row(0), out.row(0) + out.cols()};
}

BackwardResult backward(const ParamSet& params, const ForwardTrace& trace,
                        const Matrix& output_grad) {
    const std::size_t depth = params.depth();
    if (trace.depth() != depth)
        throw ShapeError("backward: trace depth " + std::to_string(trace.depth()) +
                         " != network depth " + std::to_string(depth));
    if (output_grad.rows() != trace.batch() ||
        output_grad.cols() != static_cast<std::size_t>(params.output_size()))
        throw ShapeError("backward: output_grad shape mismatch");

    const std::size_t batch = trace.batch();
    BackwardResult res;
    res.grads = ParamGrads::zeros_like(params);

    // delta starts as dL/d(act_L) and is folded through each activation.
    Matrix delta = output_grad;
    for (std::size_t li = depth; li-- > 0;) {
        const Activation a = (li + 1 == depth) ? params.output : params.hidden;
        const Matrix& z = trace.pre[li];
        const Matrix& y = trace.act[li];
        for (std::size_t i = 0; i < delta.size(); ++i)
            delta.data()[i] *= activate_deriv(a, z.data()[i], y.data()[i]);

        const Matrix& below = (li == 0) ? trace.inputs : trace.act[li - 1];
        Matrix& dw = res.grads.weights[li];
        auto& db = res.grads.biases[li];
        const std::size_t out_n = dw.rows();
        const std::size_t in_n = dw.cols();
        for (std::size_t r = 0; r < batch; ++r) {
            const double* d_row = delta.row(r);
            const double* b_row = below.row(r);
            for (std::size_t o = 0; o < out_n; ++o) {
                const double d = d_row[o];
                if (d != 0.0) axpy(d, b_row, dw.row(o), in_n);
                db[o] += d;
            }
        }

        // Propagate to the layer below (or to the input for layer 0).
        const Matrix& w = params.weights[li];
        Matrix prev(batch, in_n);
        for (std::size_t r = 0; r < batch; ++r) {
            const double* d_row = delta.row(r);
            double* p_row = prev.row(r);
            for (std::size_t o = 0; o < out_n; ++o) {
                const double d = d_row[o];
                if (d != 0.0) axpy(d, w.row(o), p_row, in_n);
            }
        }
        if (li == 0)
            res.input_grad = std::move(prev);
        else
            delta = std::move(prev);
    }
    return res;
}

}  // namespace clothrl::numerics
