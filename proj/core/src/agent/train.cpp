#include "clothrl/agent/train.hpp"

namespace clothrl::agent {

EpisodeRollout run_policy_episode(envs::ClothEnv& env, const AgentNets& nets,
                                  const RunningNorm& norm, double sigma, Rng& noise_rng,
                                  bool explore, std::uint64_t episode_seed) {
    EpisodeRollout out;
    std::vector<double> obs = env.reset(episode_seed);
    out.trajectory.steps.reserve(std::size_t(env.spec().horizon));
    while (!env.done()) {
        std::vector<double> action = select_action(nets, norm, obs, sigma, noise_rng, explore);
        envs::StepResult res = env.step(action);
        replay::Transition tr;
        tr.observation = std::move(obs);
        tr.action = std::move(action);
        tr.reward = res.reward;
        tr.next_observation = res.observation;
        tr.desired = env.goal();
        tr.achieved = res.achieved;
        tr.done = res.done;
        out.trajectory.steps.push_back(std::move(tr));
        obs = std::move(res.observation);
        if (res.done) out.final_success = res.is_success;
    }
    out.anytime_success = env.anytime_success();
    return out;
}

void update_normalizer(RunningNorm& norm, const replay::EpisodeTrajectory& episode) {
    for (const auto& tr : episode.steps) norm.update(tr.observation);
    if (!episode.steps.empty()) norm.update(episode.steps.back().next_observation);
}

TrainStats train_cycle(envs::ClothEnv& env, AgentNets& nets, RunningNorm& norm,
                       replay::EpisodeBuffer& main_buffer,
                       const replay::EpisodeBuffer* demo_buffer, const AgentConfig& cfg,
                       std::uint64_t run_seed, const EpochCallback& on_epoch) {
    cfg.validate();
    const envs::ObsLayout layout = envs::obs_layout(env.spec(), env.n_points());
    const replay::HerConfig her{cfg.her_k};

    Rng noise_rng(derive_seed(run_seed, 0x61637431));   // action noise stream
    Rng sample_rng(derive_seed(run_seed, 0x73616d70));  // batch sampling stream

    TrainStats stats;
    stats.epochs.reserve(std::size_t(cfg.epochs));
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        EpochStats row;
        row.epoch = epoch;

        for (int e = 0; e < cfg.train_episodes_per_epoch; ++e) {
            const std::uint64_t seed = derive_seed(run_seed, 2 * std::uint64_t(epoch), e);
            EpisodeRollout roll =
                run_policy_episode(env, nets, norm, cfg.sigma, noise_rng, /*explore=*/true, seed);
            update_normalizer(norm, roll.trajectory);
            main_buffer.store_episode(std::move(roll.trajectory));
            ++row.episodes_collected;
        }

        double critic_loss_sum = 0.0, actor_loss_sum = 0.0;
        long filter_passes = 0, demo_seen = 0;
        for (int u = 0; u < cfg.updates_per_epoch; ++u) {
            replay::Batch batch =
                replay::sample_her_batch(main_buffer, demo_buffer, cfg.batch_size, cfg.n_demo,
                                         her, env.spec(), layout, sample_rng);
            critic_loss_sum += critic_update(nets, norm, batch, cfg).loss;
            const ActorUpdateInfo a = actor_update(nets, norm, batch, cfg);
            actor_loss_sum += a.loss;
            filter_passes += a.filter_passes;
            demo_seen += a.demo_count;
            update_targets(nets, cfg.tau);
        }
        if (cfg.updates_per_epoch > 0) {
            row.critic_loss = critic_loss_sum / cfg.updates_per_epoch;
            row.actor_loss = actor_loss_sum / cfg.updates_per_epoch;
        }
        row.filter_pass_rate = demo_seen > 0 ? double(filter_passes) / double(demo_seen) : 0.0;

        int successes = 0, anytime = 0;
        for (int e = 0; e < cfg.test_episodes_per_epoch; ++e) {
            const std::uint64_t seed = derive_seed(run_seed, 2 * std::uint64_t(epoch) + 1, e);
            EpisodeRollout roll =
                run_policy_episode(env, nets, norm, 0.0, noise_rng, /*explore=*/false, seed);
            successes += roll.final_success ? 1 : 0;
            anytime += roll.anytime_success ? 1 : 0;
        }
        if (cfg.test_episodes_per_epoch > 0) {
            row.success_rate = double(successes) / cfg.test_episodes_per_epoch;
            row.anytime_success_rate = double(anytime) / cfg.test_episodes_per_epoch;
        }

        stats.epochs.push_back(row);
        if (on_epoch) on_epoch(row, nets, norm);
    }
    return stats;
}

}  // namespace clothrl::agent
