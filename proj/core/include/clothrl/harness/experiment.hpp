#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clothrl/agent/nets.hpp"
#include "clothrl/envs/task.hpp"

namespace clothrl::harness {

enum class AgentVariant { DdpgDemoHer, DdpgHer, DdpgDemo };

std::string to_string(AgentVariant v);
AgentVariant variant_from_string(const std::string& s);

struct VariantSettings {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    int n_demo = 0;
    int her_k = 0;
};

// The one place the variant -> (lambda1, lambda2, n_demo, HER k) mapping
// lives; every command shares all other configuration.
VariantSettings variant_settings(AgentVariant v);

struct ExperimentConfig {
    envs::TaskId task = envs::TaskId::DiagonalFold;
    AgentVariant variant = AgentVariant::DdpgDemoHer;
    int n_points = 8;
    std::vector<std::uint64_t> seeds = {0, 1, 2};
    envs::EnvOverrides env_overrides;
    agent::AgentConfig agent;
    std::string demo_file;         // optional pre-generated demonstrations
    int demo_episodes = 20;
    std::uint64_t demo_seed = 1000;
    std::string out_dir = "out";

    static ExperimentConfig from_kv(const KvConfig& kv);

    // Fully resolved canonical key-value form; equal fingerprints imply
    // bit-identical runs.
    KvConfig effective_kv() const;
    std::string fingerprint() const;

    envs::TaskSpec task_spec() const { return envs::make_task(task, env_overrides); }
};

}  // namespace clothrl::harness
