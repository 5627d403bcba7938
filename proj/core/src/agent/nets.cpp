#include "clothrl/agent/nets.hpp"

#include <fstream>

#include "clothrl/common/errors.hpp"
#include "clothrl/numerics/checkpoint.hpp"

namespace clothrl::agent {

void AgentConfig::validate() const {
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("agent: gamma must lie in (0, 1]");
    if (gamma == 1.0) throw ConfigError("agent: gamma = 1 makes the return bound infinite");
    if (tau <= 0.0 || tau > 1.0) throw ConfigError("agent: tau must lie in (0, 1]");
    if (lambda1 < 0.0 || lambda2 < 0.0) throw ConfigError("agent: lambda weights must be >= 0");
    if (batch_size <= 0 || n_demo < 0 || n_demo > batch_size)
        throw ConfigError("agent: need 0 <= n_demo <= batch_size");
    if (her_k < 0) throw ConfigError("agent: her_k must be >= 0");
    if (hidden_width <= 0 || hidden_layers <= 0) throw ConfigError("agent: bad network shape");
}

void AgentConfig::apply_kv(const KvConfig& kv) {
    gamma = kv.get_double("gamma", gamma);
    tau = kv.get_double("tau", tau);
    actor_lr = kv.get_double("actor_lr", actor_lr);
    critic_lr = kv.get_double("critic_lr", critic_lr);
    sigma = kv.get_double("sigma", sigma);
    lambda1 = kv.get_double("lambda1", lambda1);
    lambda2 = kv.get_double("lambda2", lambda2);
    batch_size = int(kv.get_int("batch_size", batch_size));
    n_demo = int(kv.get_int("n_demo", n_demo));
    her_k = int(kv.get_int("her_k", her_k));
    updates_per_epoch = int(kv.get_int("updates_per_epoch", updates_per_epoch));
    epochs = int(kv.get_int("epochs", epochs));
    train_episodes_per_epoch = int(kv.get_int("train_episodes", train_episodes_per_epoch));
    test_episodes_per_epoch = int(kv.get_int("test_episodes", test_episodes_per_epoch));
    hidden_width = int(kv.get_int("hidden_width", hidden_width));
    hidden_layers = int(kv.get_int("hidden_layers", hidden_layers));
    norm_clip = kv.get_double("norm_clip", norm_clip);
    buffer_capacity = int(kv.get_int("buffer_capacity", buffer_capacity));
    checkpoint_stride = int(kv.get_int("checkpoint_stride", checkpoint_stride));
}

AgentNets AgentNets::init(int obs_dims, int action_dims, const AgentConfig& cfg, Rng& rng) {
    cfg.validate();
    std::vector<int> actor_sizes{obs_dims};
    std::vector<int> critic_sizes{obs_dims + action_dims};
    for (int l = 0; l < cfg.hidden_layers; ++l) {
        actor_sizes.push_back(cfg.hidden_width);
        critic_sizes.push_back(cfg.hidden_width);
    }
    actor_sizes.push_back(action_dims);
    critic_sizes.push_back(1);

    AgentNets nets;
    // Small final actor layer: near-zero initial actions.
    nets.actor = numerics::mlp_init(actor_sizes, numerics::Activation::Relu,
                                    numerics::Activation::Tanh, rng, 1e-2);
    nets.critic = numerics::mlp_init(critic_sizes, numerics::Activation::Relu,
                                     numerics::Activation::Identity, rng);
    nets.target_actor = nets.actor;
    nets.target_critic = nets.critic;
    nets.actor_opt = numerics::AdamState::for_params(nets.actor);
    nets.critic_opt = numerics::AdamState::for_params(nets.critic);
    return nets;
}

namespace {
constexpr char kAgentMagic[8] = {'C', 'R', 'L', 'A', 'G', 'N', 'T', '1'};
}

void save_agent_checkpoint(const std::string& path, const AgentNets& nets,
                           const RunningNorm& norm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write agent checkpoint: " + path);
    out.write(kAgentMagic, 8);
    numerics::write_u32(out, 1);
    numerics::write_u64(out, norm.dims());
    numerics::write_f64(out, norm.clip());
    numerics::write_u64(out, norm.count());
    for (const double v : norm.mean()) numerics::write_f64(out, v);
    for (const double v : norm.m2()) numerics::write_f64(out, v);
    numerics::write_param_set(out, nets.actor);
    numerics::write_param_set(out, nets.critic);
    if (!out) throw IoError("agent checkpoint write failed: " + path);
}

AgentSnapshot load_agent_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open agent checkpoint: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::string(magic, 8) != std::string(kAgentMagic, 8))
        throw IoError("agent checkpoint: bad magic");
    const std::uint32_t version = numerics::read_u32(in);
    if (version != 1) throw IoError("agent checkpoint: unsupported version");
    const std::uint64_t dims = numerics::read_u64(in);
    const double clip = numerics::read_f64(in);
    const std::uint64_t count = numerics::read_u64(in);
    std::vector<double> mean(dims), m2(dims);
    for (auto& v : mean) v = numerics::read_f64(in);
    for (auto& v : m2) v = numerics::read_f64(in);

    AgentSnapshot snap{numerics::read_param_set(in), numerics::read_param_set(in),
                       RunningNorm::restore(clip, count, std::move(mean), std::move(m2))};
    return snap;
}

}  // namespace clothrl::agent
