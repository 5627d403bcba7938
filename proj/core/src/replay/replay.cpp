#include "clothrl/replay/replay.hpp"

#include "clothrl/common/errors.hpp"

namespace clothrl::replay {

void validate_trajectory(const EpisodeTrajectory& episode) {
    if (episode.steps.empty()) throw ValidationError("trajectory: empty episode");
    const Transition& first = episode.steps.front();
    for (std::size_t t = 0; t < episode.steps.size(); ++t) {
        const Transition& tr = episode.steps[t];
        if (tr.reward != 0.0 && tr.reward != -1.0)
            throw ValidationError("trajectory: reward outside {-1, 0} at step " +
                                  std::to_string(t));
        if (tr.desired != first.desired)
            throw ValidationError("trajectory: desired goal changed at step " + std::to_string(t));
        if (tr.observation.size() != first.observation.size() ||
            tr.next_observation.size() != first.observation.size())
            throw ValidationError("trajectory: observation size changed at step " +
                                  std::to_string(t));
        if (t + 1 < episode.steps.size() &&
            tr.next_observation != episode.steps[t + 1].observation)
            throw ValidationError("trajectory: broken observation chain at step " +
                                  std::to_string(t));
    }
}

EpisodeBuffer::EpisodeBuffer(std::size_t capacity_episodes) : capacity_(capacity_episodes) {
    if (capacity_ == 0) throw ConfigError("EpisodeBuffer: capacity must be positive");
}

void EpisodeBuffer::store_episode(EpisodeTrajectory episode) {
    validate_trajectory(episode);
    transitions_ += episode.steps.size();
    episodes_.push_back(std::move(episode));
    while (episodes_.size() > capacity_) {
        transitions_ -= episodes_.front().steps.size();
        episodes_.pop_front();
    }
}

}  // namespace clothrl::replay
