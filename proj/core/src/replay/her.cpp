#include "clothrl/replay/her.hpp"

#include "clothrl/common/errors.hpp"

namespace clothrl::replay {

Transition relabel(const EpisodeTrajectory& episode, int t, int future_index,
                   const envs::TaskSpec& task, const envs::ObsLayout& layout) {
    const int length = episode.length();
    if (t < 0 || t >= length || future_index < t || future_index >= length)
        throw ValidationError("relabel: index out of range");

    Transition out = episode.steps[t];
    const std::vector<double>& new_goal = episode.steps[future_index].achieved;
    out.desired = new_goal;
    envs::set_observation_goal(out.observation, layout, new_goal);
    envs::set_observation_goal(out.next_observation, layout, new_goal);
    out.reward = envs::reward(out.achieved, new_goal, task.delta);
    return out;
}

namespace {

Transition sample_one(const EpisodeBuffer& buffer, const HerConfig& her,
                      const envs::TaskSpec& task, const envs::ObsLayout& layout, Rng& rng,
                      bool* was_relabeled) {
    const std::size_t ep_idx = rng.uniform_int(buffer.size());
    const EpisodeTrajectory& episode = buffer.episode(ep_idx);
    const int length = episode.length();
    const int t = int(rng.uniform_int(std::uint64_t(length)));

    const bool do_relabel = her.k > 0 && rng.uniform() < her.relabel_probability();
    if (!do_relabel) {
        if (was_relabeled) *was_relabeled = false;
        return episode.steps[t];
    }
    const int future = t + int(rng.uniform_int(std::uint64_t(length - t)));
    if (was_relabeled) *was_relabeled = true;
    return relabel(episode, t, future, task, layout);
}

}  // namespace

Batch sample_her_batch(const EpisodeBuffer& main_buffer, const EpisodeBuffer* demo_buffer,
                       int batch_size, int n_demo, const HerConfig& her,
                       const envs::TaskSpec& task, const envs::ObsLayout& layout, Rng& rng) {
    if (batch_size <= 0 || n_demo < 0 || n_demo > batch_size)
        throw ConfigError("sample_her_batch: need 0 <= n_demo <= batch_size");
    if (main_buffer.empty()) throw ValidationError("sample_her_batch: main buffer is empty");
    if (n_demo > 0 && (demo_buffer == nullptr || demo_buffer->empty()))
        throw ValidationError("sample_her_batch: demo transitions requested but buffer empty");

    Batch batch;
    batch.transitions.reserve(std::size_t(batch_size));
    batch.demo.reserve(std::size_t(batch_size));
    batch.relabeled.reserve(std::size_t(batch_size));

    bool relabeled = false;
    for (int i = 0; i < batch_size - n_demo; ++i) {
        batch.transitions.push_back(sample_one(main_buffer, her, task, layout, rng, &relabeled));
        batch.demo.push_back(false);
        batch.relabeled.push_back(relabeled);
    }
    for (int i = 0; i < n_demo; ++i) {
        batch.transitions.push_back(sample_one(*demo_buffer, her, task, layout, rng, &relabeled));
        batch.demo.push_back(true);
        batch.relabeled.push_back(relabeled);
    }
    return batch;
}

}  // namespace clothrl::replay
