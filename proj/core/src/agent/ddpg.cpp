#include "clothrl/agent/ddpg.hpp"

#include <algorithm>
#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::agent {

using numerics::ForwardTrace;

namespace {

// Normalized observation rows.
Matrix normalized_obs(const RunningNorm& norm, const replay::Batch& batch, bool next) {
    const std::size_t n = batch.size();
    const std::size_t d = norm.dims();
    Matrix out(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& obs =
            next ? batch.transitions[i].next_observation : batch.transitions[i].observation;
        norm.normalize_into(obs, out.row(i));
    }
    return out;
}

Matrix concat_cols(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::copy(a.row(r), a.row(r) + a.cols(), out.row(r));
        std::copy(b.row(r), b.row(r) + b.cols(), out.row(r) + a.cols());
    }
    return out;
}

Matrix action_matrix(const replay::Batch& batch, std::size_t action_dims) {
    Matrix out(batch.size(), action_dims);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& a = batch.transitions[i].action;
        if (a.size() != action_dims) throw ShapeError("batch action size mismatch");
        std::copy(a.begin(), a.end(), out.row(i));
    }
    return out;
}

}  // namespace

std::vector<double> select_action(const AgentNets& nets, const RunningNorm& norm,
                                  std::span<const double> observation, double sigma, Rng& rng,
                                  bool explore) {
    const std::vector<double> x = norm.normalize(observation);
    std::vector<double> action = numerics::forward(nets.actor, x);
    if (explore && sigma > 0.0)
        for (auto& a : action) a += rng.normal(0.0, sigma);
    for (auto& a : action) a = std::clamp(a, -1.0, 1.0);
    return action;
}

CriticUpdateInfo critic_update(AgentNets& nets, const RunningNorm& norm,
                               const replay::Batch& batch, const AgentConfig& cfg) {
    if (batch.size() == 0) throw ValidationError("critic_update: empty batch");
    const std::size_t n = batch.size();
    const std::size_t act_dims = std::size_t(nets.actor.output_size());

    const Matrix next_obs = normalized_obs(norm, batch, /*next=*/true);
    const Matrix next_actions = numerics::forward_batch(nets.target_actor, next_obs);
    const Matrix next_q =
        numerics::forward_batch(nets.target_critic, concat_cols(next_obs, next_actions));

    const double lo = cfg.min_return();
    CriticUpdateInfo info;
    info.min_target = 0.0;
    info.max_target = lo;
    std::vector<double> targets(n);
    for (std::size_t i = 0; i < n; ++i) {
        double y = batch.transitions[i].reward + cfg.gamma * next_q(i, 0);
        y = std::clamp(y, lo, 0.0);
        targets[i] = y;
        info.min_target = std::min(info.min_target, y);
        info.max_target = std::max(info.max_target, y);
    }

    const Matrix obs = normalized_obs(norm, batch, /*next=*/false);
    const Matrix actions = action_matrix(batch, act_dims);
    ForwardTrace trace;
    const Matrix q = numerics::forward_batch(nets.critic, concat_cols(obs, actions), &trace);

    Matrix dq(n, 1);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double err = q(i, 0) - targets[i];
        loss += err * err;
        dq(i, 0) = 2.0 * err / double(n);
    }
    loss /= double(n);
    if (!std::isfinite(loss))
        throw NumericError("critic_update: non-finite loss (batch of " + std::to_string(n) + ")");
    info.loss = loss;

    auto back = numerics::backward(nets.critic, trace, dq);
    numerics::adam_step(nets.critic, back.grads, nets.critic_opt, cfg.critic_lr);
    return info;
}

BcLossResult bc_loss(const AgentNets& nets, const RunningNorm& norm, const replay::Batch& batch) {
    for (std::size_t i = 0; i < batch.size(); ++i)
        if (!batch.demo[i])
            throw ValidationError("bc_loss: batch contains non-demonstration transitions");
    if (batch.size() == 0) return {};

    const std::size_t act_dims = std::size_t(nets.actor.output_size());
    const Matrix obs = normalized_obs(norm, batch, /*next=*/false);
    const Matrix pi = numerics::forward_batch(nets.actor, obs);
    const Matrix q_pi = numerics::forward_batch(nets.critic, concat_cols(obs, pi));
    const Matrix demo_actions = action_matrix(batch, act_dims);
    const Matrix q_demo = numerics::forward_batch(nets.critic, concat_cols(obs, demo_actions));

    BcLossResult res;
    res.filter_mask.resize(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const bool pass = q_demo(i, 0) > q_pi(i, 0);
        res.filter_mask[i] = pass;
        if (!pass) continue;
        for (std::size_t d = 0; d < act_dims; ++d) {
            const double diff = pi(i, d) - demo_actions(i, d);
            res.loss += diff * diff;
        }
    }
    return res;
}

ActorUpdateInfo actor_update(AgentNets& nets, const RunningNorm& norm, const replay::Batch& batch,
                             const AgentConfig& cfg) {
    if (batch.size() == 0) throw ValidationError("actor_update: empty batch");
    const std::size_t n = batch.size();
    const std::size_t act_dims = std::size_t(nets.actor.output_size());
    const std::size_t obs_dims = std::size_t(nets.actor.input_size());

    const Matrix obs = normalized_obs(norm, batch, /*next=*/false);
    ForwardTrace actor_trace;
    const Matrix pi = numerics::forward_batch(nets.actor, obs, &actor_trace);

    ForwardTrace critic_trace;
    const Matrix q_pi =
        numerics::forward_batch(nets.critic, concat_cols(obs, pi), &critic_trace);

    ActorUpdateInfo info;

    // Policy-gradient part: dL/dpi of -lambda1 * mean(Q) via the critic's
    // input gradient, keeping only the action columns.
    Matrix d_pi(n, act_dims);
    double mean_q = 0.0;
    if (cfg.lambda1 != 0.0) {
        Matrix dq(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            mean_q += q_pi(i, 0);
            dq(i, 0) = -cfg.lambda1 / double(n);
        }
        mean_q /= double(n);
        const auto critic_back = numerics::backward(nets.critic, critic_trace, dq);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < act_dims; ++d)
                d_pi(i, d) = critic_back.input_grad(i, obs_dims + d);
    }

    // Behavior-cloning part over demo transitions that pass the Q-filter.
    double bc_term = 0.0;
    if (cfg.lambda2 != 0.0) {
        std::vector<std::size_t> demo_rows;
        for (std::size_t i = 0; i < n; ++i)
            if (batch.demo[i]) demo_rows.push_back(i);
        info.demo_count = int(demo_rows.size());
        if (!demo_rows.empty()) {
            Matrix demo_actions(demo_rows.size(), act_dims);
            Matrix demo_in(demo_rows.size(), obs_dims + act_dims);
            for (std::size_t r = 0; r < demo_rows.size(); ++r) {
                const std::size_t i = demo_rows[r];
                const auto& a = batch.transitions[i].action;
                std::copy(a.begin(), a.end(), demo_actions.row(r));
                std::copy(obs.row(i), obs.row(i) + obs_dims, demo_in.row(r));
                std::copy(a.begin(), a.end(), demo_in.row(r) + obs_dims);
            }
            const Matrix q_demo = numerics::forward_batch(nets.critic, demo_in);
            for (std::size_t r = 0; r < demo_rows.size(); ++r) {
                const std::size_t i = demo_rows[r];
                const bool pass = q_demo(r, 0) > q_pi(i, 0);
                if (!pass) continue;
                ++info.filter_passes;
                for (std::size_t d = 0; d < act_dims; ++d) {
                    const double diff = pi(i, d) - demo_actions(r, d);
                    bc_term += diff * diff;
                    d_pi(i, d) += cfg.lambda2 * 2.0 * diff;
                }
            }
        }
    }
    info.bc_term = bc_term;
    info.loss = -cfg.lambda1 * mean_q + cfg.lambda2 * bc_term;
    if (!std::isfinite(info.loss)) throw NumericError("actor_update: non-finite loss");

    const auto actor_back = numerics::backward(nets.actor, actor_trace, d_pi);
    numerics::adam_step(nets.actor, actor_back.grads, nets.actor_opt, cfg.actor_lr);
    return info;
}

void update_targets(AgentNets& nets, double tau) {
    numerics::soft_update(nets.target_actor, nets.actor, tau);
    numerics::soft_update(nets.target_critic, nets.critic, tau);
}

}  // namespace clothrl::agent
