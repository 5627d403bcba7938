#pragma once

#include <deque>
#include <vector>

#include "clothrl/envs/observe.hpp"

namespace clothrl::replay {

// Unit of replay. achieved is the achieved goal of the *next* state, stored
// at collection time so relabeling never re-queries the simulator.
struct Transition {
    std::vector<double> observation;
    std::vector<double> action;
    double reward = -1.0;
    std::vector<double> next_observation;
    std::vector<double> desired;
    std::vector<double> achieved;
    bool done = false;

    bool operator==(const Transition&) const = default;
};

// One full episode; consecutive observations chain and the desired goal is
// constant throughout.
struct EpisodeTrajectory {
    std::vector<Transition> steps;

    int length() const { return int(steps.size()); }
    bool operator==(const EpisodeTrajectory&) const = default;
};

// Throws ValidationError when the trajectory invariants are broken.
void validate_trajectory(const EpisodeTrajectory& episode);

// Ring storage of episodes with FIFO eviction. The demonstration buffer is
// the same container with capacity equal to its episode count.
class EpisodeBuffer {
public:
    explicit EpisodeBuffer(std::size_t capacity_episodes);

    void store_episode(EpisodeTrajectory episode);

    std::size_t size() const { return episodes_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool empty() const { return episodes_.empty(); }
    std::size_t transition_count() const { return transitions_; }

    const EpisodeTrajectory& episode(std::size_t i) const { return episodes_[i]; }

private:
    std::size_t capacity_;
    std::size_t transitions_ = 0;
    std::deque<EpisodeTrajectory> episodes_;
};

}  // namespace clothrl::replay
