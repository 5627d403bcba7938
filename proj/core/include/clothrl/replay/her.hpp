#pragma once

#include "clothrl/replay/replay.hpp"

namespace clothrl::replay {

// "future" strategy: each sampled transition is independently relabeled with
// probability k / (k + 1) using a goal achieved later in its own episode.
struct HerConfig {
    int k = 4;

    double relabel_probability() const { return double(k) / double(k + 1); }
};

// Copy of episode.steps[t] with the desired goal replaced by the achieved
// goal stored at future_index (the goal satisfied after that step) and the
// reward recomputed. The stored trajectory is not touched.
Transition relabel(const EpisodeTrajectory& episode, int t, int future_index,
                   const envs::TaskSpec& task, const envs::ObsLayout& layout);

struct Batch {
    std::vector<Transition> transitions;
    std::vector<bool> demo;       // demonstration-origin flag, for the BC loss
    std::vector<bool> relabeled;  // diagnostics: which entries HER rewrote

    std::size_t size() const { return transitions.size(); }
};

// batch_size - n_demo transitions sampled uniformly from the main buffer and
// n_demo from the demonstration buffer, each independently HER-relabeled.
Batch sample_her_batch(const EpisodeBuffer& main_buffer, const EpisodeBuffer* demo_buffer,
                       int batch_size, int n_demo, const HerConfig& her,
                       const envs::TaskSpec& task, const envs::ObsLayout& layout, Rng& rng);

}  // namespace clothrl::replay
