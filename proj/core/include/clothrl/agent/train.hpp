#pragma once

#include <functional>

#include "clothrl/agent/ddpg.hpp"
#include "clothrl/envs/env.hpp"

namespace clothrl::agent {

struct EpochStats {
    int epoch = 0;
    double success_rate = 0.0;          // mean final-step success over test episodes
    double anytime_success_rate = 0.0;  // success at any step, same episodes
    double critic_loss = 0.0;           // means over the epoch's updates
    double actor_loss = 0.0;
    double filter_pass_rate = 0.0;      // Q-filter passes / demo transitions
    int episodes_collected = 0;
};

struct TrainStats {
    std::vector<EpochStats> epochs;
};

struct EpisodeRollout {
    replay::EpisodeTrajectory trajectory;
    bool final_success = false;
    bool anytime_success = false;
};

// One policy episode from env.reset(seed). Exploration noise when explore.
EpisodeRollout run_policy_episode(envs::ClothEnv& env, const AgentNets& nets,
                                  const RunningNorm& norm, double sigma, Rng& noise_rng,
                                  bool explore, std::uint64_t episode_seed);

using EpochCallback =
    std::function<void(const EpochStats&, const AgentNets&, const RunningNorm&)>;

// The epoch-structured training loop: collect exploration episodes, run the
// update schedule (critic, actor, target soft-updates), then evaluate the
// noiseless policy. Deterministic for a given (seed, config).
TrainStats train_cycle(envs::ClothEnv& env, AgentNets& nets, RunningNorm& norm,
                       replay::EpisodeBuffer& main_buffer,
                       const replay::EpisodeBuffer* demo_buffer, const AgentConfig& cfg,
                       std::uint64_t run_seed, const EpochCallback& on_epoch = {});

// Feed every observation of an episode into the running normalizer.
void update_normalizer(RunningNorm& norm, const replay::EpisodeTrajectory& episode);

}  // namespace clothrl::agent
