#pragma once

#include <string>

#include "clothrl/agent/normalizer.hpp"
#include "clothrl/common/kv.hpp"
#include "clothrl/numerics/optim.hpp"

namespace clothrl::agent {

struct AgentConfig {
    double gamma = 0.98;    // discount, in (0, 1]
    double tau = 0.05;      // target soft-update rate
    double actor_lr = 1e-3;
    double critic_lr = 1e-3;
    double sigma = 0.2;     // exploration noise, action units
    double lambda1 = 0.001; // policy-gradient weight in the actor loss
    double lambda2 = 0.0078;// behavior-cloning weight in the actor loss
    int batch_size = 256;
    int n_demo = 32;        // demo transitions per batch
    int her_k = 4;          // future-goal replays per transition
    int updates_per_epoch = 40;
    int epochs = 50;
    int train_episodes_per_epoch = 20;
    int test_episodes_per_epoch = 10;
    int hidden_width = 256;
    int hidden_layers = 3;
    double norm_clip = 5.0;
    int buffer_capacity = 1000;  // episodes
    int checkpoint_stride = 0;   // epochs between checkpoints; 0 = final only

    void validate() const;
    void apply_kv(const KvConfig& kv);

    double min_return() const { return -1.0 / (1.0 - gamma); }
};

struct AgentNets {
    numerics::ParamSet actor;
    numerics::ParamSet critic;
    numerics::ParamSet target_actor;
    numerics::ParamSet target_critic;
    numerics::AdamState actor_opt;
    numerics::AdamState critic_opt;

    static AgentNets init(int obs_dims, int action_dims, const AgentConfig& cfg, Rng& rng);
};

// Agent checkpoint: header, observation normalizer, then the actor and
// critic parameter sets (each in the standard parameter-checkpoint framing).
void save_agent_checkpoint(const std::string& path, const AgentNets& nets,
                           const RunningNorm& norm);

struct AgentSnapshot {
    numerics::ParamSet actor;
    numerics::ParamSet critic;
    RunningNorm norm;
};

AgentSnapshot load_agent_checkpoint(const std::string& path);

}  // namespace clothrl::agent
