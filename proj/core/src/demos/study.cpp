#include "clothrl/demos/study.hpp"

#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::demos {

StudyResult run_randomization_study(const envs::TaskSpec& task, RandomizationMode mode,
                                    int n_episodes, int n_epochs, std::uint64_t seed) {
    if (n_episodes < 1 || n_epochs < 1)
        throw ConfigError("randomization study: need positive episode and epoch counts");

    const WaypointScript base = make_script(task.id);
    envs::ClothEnv env(task, 8);

    StudyResult result;
    result.mode = mode;
    result.epoch_rates.reserve(std::size_t(n_epochs));
    for (int epoch = 0; epoch < n_epochs; ++epoch) {
        int successes = 0;
        for (int ep = 0; ep < n_episodes; ++ep) {
            const std::uint64_t ep_seed =
                derive_seed(seed, std::uint64_t(epoch), std::uint64_t(ep));
            Rng ep_rng(derive_seed(ep_seed, 0x73747564));
            const WaypointScript script = randomize(base, mode, ep_rng);

            env.reset(ep_seed);
            ScriptRunner runner(script, env.cloth_origin(), task.physics.manip_max_speed,
                                task.physics.dt * task.physics.substeps, 0.1);
            bool success = false;
            try {
                while (!env.done()) {
                    const std::vector<double> action =
                        runner.action(env.state(), task.action_dims, ep_rng);
                    const envs::StepResult res = env.step(action);
                    if (res.done) success = res.is_success;
                }
            } catch (const SimBlowupError&) {
                success = false;  // blown-up episode counts as a failure
            }
            if (success) ++successes;
        }
        result.epoch_rates.push_back(double(successes) / double(n_episodes));
    }

    double sum = 0.0;
    for (const double r : result.epoch_rates) sum += r;
    result.mean = sum / double(n_epochs);
    double var = 0.0;
    for (const double r : result.epoch_rates) var += (r - result.mean) * (r - result.mean);
    result.stddev = std::sqrt(var / double(n_epochs));
    return result;
}

}  // namespace clothrl::demos
