#include <benchmark/benchmark.h>

#include "clothrl/numerics/optim.hpp"

using namespace clothrl;
using numerics::Activation;

static void MlpForwardBatch(benchmark::State& state) {
    Rng rng(1);
    const numerics::ParamSet net =
        numerics::mlp_init({61, 256, 256, 256, 4}, Activation::Relu, Activation::Tanh, rng);
    Matrix inputs(std::size_t(state.range(0)), 61);
    for (auto& v : inputs.data()) v = rng.uniform(-1, 1);
    for (auto _ : state) {
        const Matrix out = numerics::forward_batch(net, inputs);
        benchmark::DoNotOptimize(out.data().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(MlpForwardBatch)->Arg(1)->Arg(256);

static void MlpBackwardBatch(benchmark::State& state) {
    Rng rng(1);
    const numerics::ParamSet net =
        numerics::mlp_init({61, 256, 256, 256, 4}, Activation::Relu, Activation::Tanh, rng);
    Matrix inputs(std::size_t(state.range(0)), 61);
    for (auto& v : inputs.data()) v = rng.uniform(-1, 1);
    numerics::ForwardTrace trace;
    numerics::forward_batch(net, inputs, &trace);
    Matrix dy(std::size_t(state.range(0)), 4, 0.01);
    for (auto _ : state) {
        const auto back = numerics::backward(net, trace, dy);
        benchmark::DoNotOptimize(back.grads.weights.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(MlpBackwardBatch)->Arg(256);
