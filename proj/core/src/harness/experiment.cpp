#include "clothrl/harness/experiment.hpp"

#include "clothrl/common/errors.hpp"
#include "clothrl/common/fingerprint.hpp"

namespace clothrl::harness {

std::string to_string(AgentVariant v) {
    switch (v) {
        case AgentVariant::DdpgDemoHer: return "ddpg_demo_her";
        case AgentVariant::DdpgHer: return "ddpg_her";
        case AgentVariant::DdpgDemo: return "ddpg_demo";
    }
    return "?";
}

AgentVariant variant_from_string(const std::string& s) {
    if (s == "ddpg_demo_her") return AgentVariant::DdpgDemoHer;
    if (s == "ddpg_her") return AgentVariant::DdpgHer;
    if (s == "ddpg_demo") return AgentVariant::DdpgDemo;
    throw ConfigError("unknown agent variant: " + s);
}

VariantSettings variant_settings(AgentVariant v) {
    switch (v) {
        case AgentVariant::DdpgDemoHer: return {0.001, 0.0078, 32, 4};
        case AgentVariant::DdpgHer: return {1.0, 0.0, 0, 4};
        case AgentVariant::DdpgDemo: return {0.001, 0.0078, 32, 0};
    }
    throw ConfigError("unknown agent variant");
}

ExperimentConfig ExperimentConfig::from_kv(const KvConfig& kv) {
    ExperimentConfig cfg;
    cfg.task = envs::task_from_string(kv.get_string("task", "diagonal_fold"));
    cfg.variant = variant_from_string(kv.get_string("variant", "ddpg_demo_her"));
    cfg.n_points = int(kv.get_int("n_points", 8));
    if (cfg.n_points != 4 && cfg.n_points != 8 && cfg.n_points != 12)
        throw ConfigError("config: n_points must be 4, 8 or 12");

    const auto seed_list = kv.get_int_list("seeds", {0, 1, 2});
    cfg.seeds.clear();
    for (const long long s : seed_list) cfg.seeds.push_back(std::uint64_t(s));
    if (cfg.seeds.empty()) throw ConfigError("config: need at least one seed");

    cfg.env_overrides = envs::EnvOverrides::from_kv(kv);
    cfg.agent.apply_kv(kv);

    const VariantSettings vs = variant_settings(cfg.variant);
    cfg.agent.lambda1 = vs.lambda1;
    cfg.agent.lambda2 = vs.lambda2;
    cfg.agent.n_demo = vs.n_demo;
    cfg.agent.her_k = vs.her_k;
    cfg.agent.validate();

    cfg.demo_file = kv.get_string("demo_file", "");
    cfg.demo_episodes = int(kv.get_int("demo_episodes", 20));
    cfg.demo_seed = std::uint64_t(kv.get_int("demo_seed", 1000));
    cfg.out_dir = kv.get_string("out", "out");
    return cfg;
}

KvConfig ExperimentConfig::effective_kv() const {
    KvConfig kv;
    kv.set("task", envs::to_string(task));
    kv.set("variant", to_string(variant));
    kv.set("n_points", (long long)n_points);
    std::string seed_str;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) seed_str += ",";
        seed_str += std::to_string(seeds[i]);
    }
    kv.set("seeds", seed_str);

    const envs::TaskSpec spec = task_spec();
    kv.set("mesh_rows", (long long)spec.mesh_rows);
    kv.set("mesh_cols", (long long)spec.mesh_cols);
    kv.set("cloth_side", spec.cloth_side);
    kv.set("cloth_mass", spec.cloth_mass);
    kv.set("horizon", (long long)spec.horizon);
    kv.set("delta", spec.delta);
    kv.set("goal_radius", spec.goal_radius);
    kv.set("k_structural", spec.physics.k_structural);
    kv.set("k_shear", spec.physics.k_shear);
    kv.set("k_bend", spec.physics.k_bend);
    kv.set("spring_damping", spec.physics.spring_damping);
    kv.set("velocity_damping", spec.physics.velocity_damping);
    kv.set("friction", spec.physics.friction);
    kv.set("grasp_radius", spec.physics.grasp_radius);
    kv.set("manip_max_speed", spec.physics.manip_max_speed);
    kv.set("substeps", (long long)spec.physics.substeps);
    kv.set("substep_dt", spec.physics.dt);

    kv.set("gamma", agent.gamma);
    kv.set("tau", agent.tau);
    kv.set("actor_lr", agent.actor_lr);
    kv.set("critic_lr", agent.critic_lr);
    kv.set("sigma", agent.sigma);
    kv.set("lambda1", agent.lambda1);
    kv.set("lambda2", agent.lambda2);
    kv.set("batch_size", (long long)agent.batch_size);
    kv.set("n_demo", (long long)agent.n_demo);
    kv.set("her_k", (long long)agent.her_k);
    kv.set("updates_per_epoch", (long long)agent.updates_per_epoch);
    kv.set("epochs", (long long)agent.epochs);
    kv.set("train_episodes", (long long)agent.train_episodes_per_epoch);
    kv.set("test_episodes", (long long)agent.test_episodes_per_epoch);
    kv.set("hidden_width", (long long)agent.hidden_width);
    kv.set("hidden_layers", (long long)agent.hidden_layers);
    kv.set("norm_clip", agent.norm_clip);
    kv.set("buffer_capacity", (long long)agent.buffer_capacity);

    kv.set("demo_file", demo_file);
    kv.set("demo_episodes", (long long)demo_episodes);
    kv.set("demo_seed", (long long)demo_seed);
    return kv;
}

std::string ExperimentConfig::fingerprint() const {
    return fingerprint_hex(effective_kv().serialize());
}

}  // namespace clothrl::harness
