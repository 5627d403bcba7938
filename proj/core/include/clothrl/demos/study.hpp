#pragma once

#include "clothrl/demos/script.hpp"

namespace clothrl::demos {

struct StudyResult {
    RandomizationMode mode = RandomizationMode::None;
    std::vector<double> epoch_rates;  // success rate per epoch
    double mean = 0.0;
    double stddev = 0.0;  // population std across epochs
};

// n_epochs x n_episodes scripted rollouts under the given randomization mode.
// A fresh randomized script is drawn per episode; per-episode seeds derive
// from the master seed, so results do not depend on execution order.
StudyResult run_randomization_study(const envs::TaskSpec& task, RandomizationMode mode,
                                    int n_episodes, int n_epochs, std::uint64_t seed);

}  // namespace clothrl::demos
