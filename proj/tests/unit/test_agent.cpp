#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "checks.hpp"
#include "clothrl/common/errors.hpp"

using namespace clothrl;
using numerics::Activation;

namespace {

bool same_params(const numerics::ParamSet& a, const numerics::ParamSet& b) {
    for (std::size_t l = 0; l < a.weights.size(); ++l)
        if (a.weights[l].data() != b.weights[l].data() || a.biases[l] != b.biases[l]) return false;
    return true;
}

replay::Batch synthetic_batch(int n, int obs_dims, int act_dims, Rng& rng, int demos = 0) {
    replay::Batch b;
    for (int i = 0; i < n; ++i) {
        replay::Transition tr;
        tr.observation = rng.normal_vector(std::size_t(obs_dims));
        tr.next_observation = rng.normal_vector(std::size_t(obs_dims));
        tr.action = rng.normal_vector(std::size_t(act_dims), 0.0, 0.5);
        for (auto& a : tr.action) a = std::clamp(a, -1.0, 1.0);
        tr.reward = rng.uniform() < 0.3 ? 0.0 : -1.0;
        tr.desired = {0, 0, 0};
        tr.achieved = {0, 0, 0};
        b.transitions.push_back(std::move(tr));
        b.demo.push_back(i >= n - demos);
        b.relabeled.push_back(false);
    }
    return b;
}

}  // namespace

TEST_CASE("select_action: determinism, noise clipping") {
    Rng rng(3);
    agent::AgentConfig cfg;
    cfg.hidden_width = 16;
    agent::AgentNets nets = agent::AgentNets::init(6, 3, cfg, rng);
    agent::RunningNorm norm(6);
    const std::vector<double> obs{0.2, -0.4, 1.0, 0.0, 3.0, -2.0};

    Rng n1(9), n2(9);
    const auto a1 = agent::select_action(nets, norm, obs, 0.0, n1, true);
    const auto a2 = agent::select_action(nets, norm, obs, 0.0, n2, true);
    CHECK(a1 == a2);  // sigma = 0 is the deterministic policy

    const auto test_mode_1 = agent::select_action(nets, norm, obs, 0.7, n1, false);
    const auto test_mode_2 = agent::select_action(nets, norm, obs, 0.7, n2, false);
    CHECK(test_mode_1 == test_mode_2);  // explore = false ignores sigma

    for (int i = 0; i < 200; ++i) {
        const auto noisy = agent::select_action(nets, norm, obs, 50.0, n1, true);
        for (const double a : noisy) {
            CHECK(a >= -1.0);
            CHECK(a <= 1.0);
        }
    }
}

TEST_CASE("critic_update: zero nets and zero rewards give zero loss") {
    Rng rng(5);
    agent::AgentConfig cfg;
    cfg.hidden_width = 8;
    agent::AgentNets nets = agent::AgentNets::init(4, 2, cfg, rng);
    for (auto& net : {&nets.critic, &nets.target_critic, &nets.actor, &nets.target_actor})
        for (auto& w : net->weights)
            for (auto& v : w.data()) v = 0.0;
    agent::RunningNorm norm(4);
    replay::Batch batch = synthetic_batch(8, 4, 2, rng);
    for (auto& tr : batch.transitions) tr.reward = 0.0;
    const agent::CriticUpdateInfo info = agent::critic_update(nets, norm, batch, cfg);
    CHECK(info.loss == 0.0);
}

TEST_CASE("critic_update matches a pencil-and-paper TD step") {
    // One transition, 1D observation and action, identity-friendly nets.
    agent::AgentConfig cfg;
    cfg.gamma = 0.5;
    cfg.critic_lr = 0.0;  // no parameter movement, only the loss matters here

    agent::AgentNets nets;
    auto linear_net = [](std::vector<int> sizes, std::vector<double> w, double bias) {
        numerics::ParamSet p;
        p.layer_sizes = sizes;
        p.hidden = Activation::Relu;
        p.output = Activation::Identity;
        p.weights.emplace_back(1, sizes[0]);
        for (int i = 0; i < sizes[0]; ++i) p.weights[0](0, i) = w[std::size_t(i)];
        p.biases.push_back({bias});
        return p;
    };
    // Q(s, a) = 2 s + a; target Q'(s, a) = s + a; pi'(s) = tanh(0.5 s)
    nets.critic = linear_net({2, 1}, {2.0, 1.0}, 0.0);
    nets.target_critic = linear_net({2, 1}, {1.0, 1.0}, 0.0);
    nets.actor = linear_net({1, 1}, {0.5, 0.0}, 0.0);
    nets.actor.output = Activation::Tanh;
    nets.target_actor = nets.actor;
    nets.actor_opt = numerics::AdamState::for_params(nets.actor);
    nets.critic_opt = numerics::AdamState::for_params(nets.critic);

    agent::RunningNorm norm(1);
    replay::Batch batch;
    replay::Transition tr;
    tr.observation = {1.0};
    tr.next_observation = {2.0};
    tr.action = {0.5};
    tr.reward = -1.0;
    tr.desired = {0, 0, 0};
    tr.achieved = {0, 0, 0};
    batch.transitions.push_back(tr);
    batch.demo.push_back(false);
    batch.relabeled.push_back(false);

    // a' = tanh(1.0); y = clamp(-1 + 0.5 * (2 + tanh(1)), -2, 0)
    const double a_next = std::tanh(1.0);
    const double y = std::clamp(-1.0 + 0.5 * (2.0 + a_next), -2.0, 0.0);
    const double q = 2.0 * 1.0 + 0.5;
    const double expect_loss = (q - y) * (q - y);
    const agent::CriticUpdateInfo info = agent::critic_update(nets, norm, batch, cfg);
    CHECK(info.loss == doctest::Approx(expect_loss).epsilon(1e-12));
}

TEST_CASE("TD targets stay inside the sparse-return range") {
    CHECK(checks::td_target_clamp(7).empty());
}

TEST_CASE("bc_loss honours the Q-filter truth table") {
    CHECK(checks::q_filter_truth_table().empty());
}

TEST_CASE("bc_loss: perfect imitation is free, non-demo batches are rejected") {
    Rng rng(11);
    agent::AgentConfig cfg;
    cfg.hidden_width = 8;
    agent::AgentNets nets = agent::AgentNets::init(3, 2, cfg, rng);
    agent::RunningNorm norm(3);

    replay::Batch demo = synthetic_batch(4, 3, 2, rng, 4);
    for (auto& tr : demo.transitions)
        tr.action = agent::select_action(nets, norm, tr.observation, 0.0, rng, false);
    const agent::BcLossResult res = agent::bc_loss(nets, norm, demo);
    CHECK(res.loss == 0.0);

    replay::Batch mixed = synthetic_batch(4, 3, 2, rng, 2);
    CHECK_THROWS_AS(agent::bc_loss(nets, norm, mixed), ValidationError);
}

TEST_CASE("actor_update with lambda2 = 0 is a textbook policy-gradient step") {
    Rng rng(13);
    agent::AgentConfig cfg;
    cfg.hidden_width = 8;
    cfg.lambda1 = 1.0;
    cfg.lambda2 = 0.0;
    agent::AgentNets nets = agent::AgentNets::init(3, 2, cfg, rng);
    agent::AgentNets reference = nets;
    agent::RunningNorm norm(3);
    replay::Batch batch = synthetic_batch(16, 3, 2, rng, 4);  // demo flags must be inert

    agent::actor_update(nets, norm, batch, cfg);

    // Reference implementation straight from the numerics primitives.
    {
        const std::size_t n = batch.size();
        Matrix obs(n, 3);
        for (std::size_t i = 0; i < n; ++i)
            norm.normalize_into(batch.transitions[i].observation, obs.row(i));
        numerics::ForwardTrace atrace;
        const Matrix pi = numerics::forward_batch(reference.actor, obs, &atrace);
        Matrix joint(n, 5);
        for (std::size_t i = 0; i < n; ++i) {
            std::copy(obs.row(i), obs.row(i) + 3, joint.row(i));
            std::copy(pi.row(i), pi.row(i) + 2, joint.row(i) + 3);
        }
        numerics::ForwardTrace ctrace;
        numerics::forward_batch(reference.critic, joint, &ctrace);
        Matrix dq(n, 1);
        for (std::size_t i = 0; i < n; ++i) dq(i, 0) = -cfg.lambda1 / double(n);
        const auto cback = numerics::backward(reference.critic, ctrace, dq);
        Matrix dpi(n, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < 2; ++d) dpi(i, d) = cback.input_grad(i, 3 + d);
        const auto aback = numerics::backward(reference.actor, atrace, dpi);
        numerics::adam_step(reference.actor, aback.grads, reference.actor_opt, cfg.actor_lr);
    }
    CHECK(same_params(nets.actor, reference.actor));
    CHECK(same_params(nets.critic, reference.critic));  // critic untouched
}

TEST_CASE("actor_update with lambda1 = 0 and perfect imitation does nothing") {
    Rng rng(17);
    agent::AgentConfig cfg;
    cfg.hidden_width = 8;
    cfg.lambda1 = 0.0;
    cfg.lambda2 = 1.0;
    agent::AgentNets nets = agent::AgentNets::init(3, 2, cfg, rng);
    agent::RunningNorm norm(3);
    replay::Batch batch = synthetic_batch(6, 3, 2, rng, 6);
    for (auto& tr : batch.transitions)
        tr.action = agent::select_action(nets, norm, tr.observation, 0.0, rng, false);
    const numerics::ParamSet before = nets.actor;
    agent::actor_update(nets, norm, batch, cfg);
    CHECK(same_params(nets.actor, before));
}

TEST_CASE("actor gradient matches finite differences through the Adam inversion") {
    // Small nets, frozen Q-filter margins; recover the gradient from the
    // first Adam step and compare against central differences of the loss.
    Rng rng(19);
    agent::AgentConfig cfg;
    cfg.hidden_width = 4;
    cfg.hidden_layers = 1;
    cfg.lambda1 = 0.7;
    cfg.lambda2 = 0.3;
    cfg.actor_lr = 1e-3;
    agent::AgentNets nets = agent::AgentNets::init(2, 1, cfg, rng);

    // Critic with a large action coefficient keeps the filter stable under
    // the finite-difference perturbations.
    nets.critic = numerics::ParamSet{};
    nets.critic.layer_sizes = {3, 1};
    nets.critic.hidden = Activation::Relu;
    nets.critic.output = Activation::Identity;
    nets.critic.weights.emplace_back(1, 3);
    nets.critic.weights[0](0, 0) = 0.3;
    nets.critic.weights[0](0, 1) = -0.2;
    nets.critic.weights[0](0, 2) = 5.0;
    nets.critic.biases.push_back({0.1});

    agent::RunningNorm norm(2);
    Rng brng(23);
    replay::Batch batch = synthetic_batch(3, 2, 1, brng, 1);
    batch.transitions[2].action = {0.9};  // comfortably above any tanh output

    const numerics::ParamSet theta = nets.actor;
    auto loss_at = [&](const numerics::ParamSet& actor) {
        const std::size_t n = batch.size();
        double mean_q = 0.0, bc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> x = norm.normalize(batch.transitions[i].observation);
            const std::vector<double> a = numerics::forward(actor, x);
            std::vector<double> joint = x;
            joint.insert(joint.end(), a.begin(), a.end());
            const double q_pi = numerics::forward(nets.critic, joint)[0];
            mean_q += q_pi;
            if (batch.demo[i]) {
                std::vector<double> joint_demo = x;
                const auto& ad = batch.transitions[i].action;
                joint_demo.insert(joint_demo.end(), ad.begin(), ad.end());
                const double q_demo = numerics::forward(nets.critic, joint_demo)[0];
                if (q_demo > q_pi)
                    for (std::size_t d = 0; d < a.size(); ++d)
                        bc += (a[d] - ad[d]) * (a[d] - ad[d]);
            }
        }
        return -cfg.lambda1 * mean_q / double(n) + cfg.lambda2 * bc;
    };

    agent::actor_update(nets, norm, batch, cfg);

    const double h = 1e-6;
    int checked = 0;
    for (std::size_t l = 0; l < theta.weights.size(); ++l) {
        for (std::size_t i = 0; i < theta.weights[l].size(); ++i) {
            numerics::ParamSet plus = theta, minus = theta;
            plus.weights[l].data()[i] += h;
            minus.weights[l].data()[i] -= h;
            const double fd = (loss_at(plus) - loss_at(minus)) / (2.0 * h);
            if (std::abs(fd) < 1e-5) continue;
            const double delta = nets.actor.weights[l].data()[i] - theta.weights[l].data()[i];
            // First Adam step: delta = -lr * g / (|g| + eps)  =>  recover g.
            REQUIRE(std::abs(delta) < cfg.actor_lr);
            const double eps = nets.actor_opt.epsilon;
            const double g_mag = eps * std::abs(delta) / (cfg.actor_lr - std::abs(delta));
            const double g = (delta > 0 ? -1.0 : 1.0) * g_mag;
            CHECK(g == doctest::Approx(fd).epsilon(2e-3));
            ++checked;
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("target drift never grows under soft updates") {
    Rng rng(29);
    agent::AgentConfig cfg;
    cfg.hidden_width = 8;
    for (const double tau : {0.01, 0.05, 0.5, 1.0}) {
        agent::AgentNets nets = agent::AgentNets::init(3, 2, cfg, rng);
        for (auto& w : nets.actor.weights)
            for (auto& v : w.data()) v += rng.uniform(-0.5, 0.5);
        auto inf_norm = [&] {
            double m = 0.0;
            for (std::size_t l = 0; l < nets.actor.weights.size(); ++l)
                for (std::size_t i = 0; i < nets.actor.weights[l].size(); ++i)
                    m = std::max(m, std::abs(nets.target_actor.weights[l].data()[i] -
                                             nets.actor.weights[l].data()[i]));
            return m;
        };
        const double before = inf_norm();
        agent::update_targets(nets, tau);
        CHECK(inf_norm() <= before + 1e-15);
    }
}

TEST_CASE("train_cycle: epoch structure and zero-update inertness") {
    const envs::TaskSpec task = checks::tiny_diagonal_task(12);
    envs::ClothEnv env(task, 4);
    const envs::ObsLayout layout = envs::obs_layout(task, 4);
    agent::AgentConfig cfg;
    cfg.epochs = 2;
    cfg.updates_per_epoch = 0;
    cfg.train_episodes_per_epoch = 2;
    cfg.test_episodes_per_epoch = 3;
    cfg.batch_size = 8;
    cfg.n_demo = 0;
    cfg.her_k = 4;
    cfg.hidden_width = 8;
    Rng init(1);
    agent::AgentNets nets = agent::AgentNets::init(layout.total(), task.action_dims, cfg, init);
    const numerics::ParamSet actor_before = nets.actor;
    agent::RunningNorm norm(std::size_t(layout.total()));
    replay::EpisodeBuffer buffer(16);

    const agent::TrainStats stats = agent::train_cycle(env, nets, norm, buffer, nullptr, cfg, 77);
    REQUIRE(stats.epochs.size() == 2);
    for (const auto& row : stats.epochs) {
        CHECK(row.episodes_collected == 2);
        CHECK(row.success_rate >= 0.0);
        CHECK(row.success_rate <= 1.0);
    }
    CHECK(buffer.size() == 4);
    CHECK(same_params(nets.actor, actor_before));  // no updates ran
}

TEST_CASE("one training epoch is bit-identical across reruns") {
    CHECK(checks::epoch_determinism(31).empty());
}

TEST_CASE("agent checkpoints round-trip the nets and the normalizer") {
    Rng rng(37);
    agent::AgentConfig cfg;
    cfg.hidden_width = 8;
    agent::AgentNets nets = agent::AgentNets::init(5, 2, cfg, rng);
    agent::RunningNorm norm(5, 4.0);
    for (int i = 0; i < 10; ++i) norm.update(rng.normal_vector(5, 1.0, 2.0));

    const std::string path = std::filesystem::temp_directory_path() / "clothrl_agent.ckpt";
    agent::save_agent_checkpoint(path, nets, norm);
    const agent::AgentSnapshot snap = agent::load_agent_checkpoint(path);
    CHECK(same_params(snap.actor, nets.actor));
    CHECK(same_params(snap.critic, nets.critic));
    CHECK(snap.norm.count() == norm.count());
    CHECK(snap.norm.mean() == norm.mean());
    CHECK(snap.norm.m2() == norm.m2());
    CHECK(snap.norm.clip() == norm.clip());
    std::remove(path.c_str());
}

TEST_CASE("agent config validation") {
    agent::AgentConfig cfg;
    cfg.gamma = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.gamma = 0.98;
    cfg.tau = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.tau = 0.05;
    cfg.n_demo = 400;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
