#pragma once

#include <span>
#include <string>
#include <vector>

#include "clothrl/common/matrix.hpp"
#include "clothrl/common/rng.hpp"

namespace clothrl::numerics {

enum class Activation { Identity, Relu, Tanh };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

// Dense MLP parameters. weights[l] is (layer_sizes[l+1] x layer_sizes[l]),
// row-major; biases[l] has layer_sizes[l+1] entries. All hidden layers share
// one activation, the output layer has its own.
struct ParamSet {
    std::vector<int> layer_sizes;
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
    Activation hidden = Activation::Relu;
    Activation output = Activation::Identity;

    int input_size() const { return layer_sizes.front(); }
    int output_size() const { return layer_sizes.back(); }
    std::size_t depth() const { return weights.size(); }
    std::size_t parameter_count() const;
    bool same_shape(const ParamSet& o) const;
    bool all_finite() const;
};

// Gradient (or moment) storage with the same shapes as a ParamSet.
struct ParamGrads {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;

    static ParamGrads zeros_like(const ParamSet& p);
    void scale(double s);
    bool all_finite() const;
};

// Cached activations from one batched forward pass. inputs is the batch,
// pre[l]/act[l] are the pre- and post-activation values of layer l.
struct ForwardTrace {
    Matrix inputs;
    std::vector<Matrix> pre;
    std::vector<Matrix> act;

    std::size_t depth() const { return pre.size(); }
    std::size_t batch() const { return inputs.rows(); }
};

// Scaled uniform fan-in init: W ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases
// zero. final_layer_scale shrinks the last layer's weights (near-zero initial
// outputs for actors).
ParamSet mlp_init(const std::vector<int>& layer_sizes, Activation hidden, Activation output,
                  Rng& rng, double final_layer_scale = 1.0);

// Batched forward. inputs is (batch x input_size); returns (batch x output_size).
Matrix forward_batch(const ParamSet& params, const Matrix& inputs, ForwardTrace* trace = nullptr);

// Single-sample convenience wrapper over forward_batch.
std::vector<double> forward(const ParamSet& params, std::span<const double> input,
                            ForwardTrace* trace = nullptr);

struct BackwardResult {
    ParamGrads grads;
    Matrix input_grad;  // (batch x input_size)
};

// Gradients of a scalar loss L given dL/d(output) for each batch row.
// trace must come from forward_batch on the same params.
BackwardResult backward(const ParamSet& params, const ForwardTrace& trace,
                        const Matrix& output_grad);

}  // namespace clothrl::numerics
