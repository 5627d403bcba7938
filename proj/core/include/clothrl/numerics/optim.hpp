#pragma once

#include <cstdint>

#include "clothrl/numerics/mlp.hpp"

namespace clothrl::numerics {

struct AdamState {
    ParamGrads m;  // first moments
    ParamGrads v;  // second moments
    std::int64_t step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    static AdamState for_params(const ParamSet& p);
};

// Bias-corrected Adam update in place. Throws NumericError on non-finite
// gradient entries.
void adam_step(ParamSet& params, const ParamGrads& grads, AdamState& state, double learning_rate);

// target <- (1 - tau) * target + tau * online, elementwise.
void soft_update(ParamSet& target, const ParamSet& online, double tau);

}  // namespace clothrl::numerics
