#pragma once

#include <string>

#include "clothrl/replay/replay.hpp"

namespace clothrl::replay {

// Episode files are JSON lines, mirroring the rollout-dump idiom: a header
// line identifying the format and the task, then one record per step.
// Doubles round-trip exactly, so a reloaded buffer is bit-identical.
void save_episodes(const std::string& path, const EpisodeBuffer& buffer,
                   const std::string& task_name);

struct LoadedEpisodes {
    std::string task_name;
    std::vector<EpisodeTrajectory> episodes;
};

LoadedEpisodes load_episodes(const std::string& path);

}  // namespace clothrl::replay
