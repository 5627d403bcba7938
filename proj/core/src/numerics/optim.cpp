#include "clothrl/numerics/optim.hpp"

#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::numerics {

AdamState AdamState::for_params(const ParamSet& p) {
    AdamState s;
    s.m = ParamGrads::zeros_like(p);
    s.v = ParamGrads::zeros_like(p);
    return s;
}

namespace {

void adam_update_span(double* theta, const double* g, double* m, double* v, std::size_t n,
                      double lr, double beta1, double beta2, double eps, double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(g[i])) throw NumericError("adam_step: non-finite gradient entry");
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        theta[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
}

}  // namespace

void adam_step(ParamSet& params, const ParamGrads& grads, AdamState& state, double learning_rate) {
    if (grads.weights.size() != params.weights.size())
        throw ShapeError("adam_step: gradient depth mismatch");
    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, double(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, double(state.step));
    for (std::size_t l = 0; l < params.weights.size(); ++l) {
        if (grads.weights[l].rows() != params.weights[l].rows() ||
            grads.weights[l].cols() != params.weights[l].cols() ||
            grads.biases[l].size() != params.biases[l].size())
            throw ShapeError("adam_step: gradient shape mismatch at layer " + std::to_string(l));
        adam_update_span(params.weights[l].data().data(), grads.weights[l].data().data(),
                         state.m.weights[l].data().data(), state.v.weights[l].data().data(),
                         params.weights[l].size(), learning_rate, state.beta1, state.beta2,
                         state.epsilon, bc1, bc2);
        adam_update_span(params.biases[l].data(), grads.biases[l].data(),
                         state.m.biases[l].data(), state.v.biases[l].data(),
                         params.biases[l].size(), learning_rate, state.beta1, state.beta2,
                         state.epsilon, bc1, bc2);
    }
}

void soft_update(ParamSet& target, const ParamSet& online, double tau) {
    if (tau < 0.0 || tau > 1.0) throw ConfigError("soft_update: tau must lie in [0, 1]");
    if (!target.same_shape(online)) throw ShapeError("soft_update: shape mismatch");
    for (std::size_t l = 0; l < target.weights.size(); ++l) {
        auto& tw = target.weights[l].data();
        const auto& ow = online.weights[l].data();
        for (std::size_t i = 0; i < tw.size(); ++i) tw[i] = (1.0 - tau) * tw[i] + tau * ow[i];
        auto& tb = target.biases[l];
        const auto& ob = online.biases[l];
        for (std::size_t i = 0; i < tb.size(); ++i) tb[i] = (1.0 - tau) * tb[i] + tau * ob[i];
    }
}

}  // namespace clothrl::numerics
