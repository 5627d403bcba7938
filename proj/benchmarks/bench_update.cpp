#include <benchmark/benchmark.h>

#include "clothrl/agent/ddpg.hpp"

using namespace clothrl;

namespace {

replay::Batch make_batch(int n, int obs_dims, int act_dims, Rng& rng, int demos) {
    replay::Batch b;
    for (int i = 0; i < n; ++i) {
        replay::Transition tr;
        tr.observation = rng.normal_vector(std::size_t(obs_dims));
        tr.next_observation = rng.normal_vector(std::size_t(obs_dims));
        tr.action = rng.normal_vector(std::size_t(act_dims), 0.0, 0.3);
        tr.reward = -1.0;
        tr.desired = {0, 0, 0};
        tr.achieved = {0, 0, 0};
        b.transitions.push_back(std::move(tr));
        b.demo.push_back(i >= n - demos);
        b.relabeled.push_back(false);
    }
    return b;
}

}  // namespace

static void DdpgUpdatePair(benchmark::State& state) {
    Rng rng(1);
    agent::AgentConfig cfg;
    agent::AgentNets nets = agent::AgentNets::init(61, 4, cfg, rng);
    agent::RunningNorm norm(61);
    replay::Batch batch = make_batch(cfg.batch_size, 61, 4, rng, cfg.n_demo);
    for (auto _ : state) {
        agent::critic_update(nets, norm, batch, cfg);
        agent::actor_update(nets, norm, batch, cfg);
        agent::update_targets(nets, cfg.tau);
    }
    state.SetItemsProcessed(state.iterations() * cfg.batch_size);
}
BENCHMARK(DdpgUpdatePair)->Unit(benchmark::kMillisecond);
