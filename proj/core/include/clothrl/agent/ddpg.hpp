#pragma once

#include "clothrl/agent/nets.hpp"
#include "clothrl/replay/her.hpp"

namespace clothrl::agent {

// Actor output for one observation, optionally with Gaussian exploration
// noise, clipped to [-1, 1] per component.
std::vector<double> select_action(const AgentNets& nets, const RunningNorm& norm,
                                  std::span<const double> observation, double sigma, Rng& rng,
                                  bool explore);

struct CriticUpdateInfo {
    double loss = 0.0;
    double min_target = 0.0;
    double max_target = 0.0;
};

// One Adam step on the critic against clamped TD targets
// y = clamp(r + gamma * Q'(o', pi'(o')), [-1/(1-gamma), 0]).
CriticUpdateInfo critic_update(AgentNets& nets, const RunningNorm& norm,
                               const replay::Batch& batch, const AgentConfig& cfg);

struct BcLossResult {
    double loss = 0.0;
    std::vector<bool> filter_mask;  // per demo transition: passed the Q-filter
};

// Behavior-cloning loss over a demo-only batch:
//   sum_i ||pi(o_i) - a_i||^2 * 1[Q(s_i, a_i) > Q(s_i, pi(o_i))].
// Throws ValidationError if any transition is not demo-flagged.
BcLossResult bc_loss(const AgentNets& nets, const RunningNorm& norm, const replay::Batch& batch);

struct ActorUpdateInfo {
    double loss = 0.0;
    double bc_term = 0.0;
    int demo_count = 0;
    int filter_passes = 0;
};

// One Adam step on the actor for the combined objective
//   L = -lambda1 * mean_batch Q(o, pi(o)) + lambda2 * L_BC(demo transitions).
// The critic's parameters are left untouched.
ActorUpdateInfo actor_update(AgentNets& nets, const RunningNorm& norm, const replay::Batch& batch,
                             const AgentConfig& cfg);

// Soft-update both target networks toward their online counterparts.
void update_targets(AgentNets& nets, double tau);

}  // namespace clothrl::agent
