#pragma once

#include <vector>

#include "clothrl/common/rng.hpp"
#include "clothrl/envs/task.hpp"

namespace clothrl::envs {

// Observation layout, fixed concatenation order:
//   [per selected cloth point: position xyz, velocity xyz]  (6 * n_points)
//   [manipulator 0 position xyz, velocity xyz]              (6)
//   [desired goal]                                          (goal_dims)
//   [grasp flag]                                            (1)
struct ObsLayout {
    int n_points = 0;
    int goal_dims = 0;

    int goal_offset() const { return 6 * n_points + 6; }
    int total() const { return 6 * n_points + 6 + goal_dims + 1; }
};

ObsLayout obs_layout(const TaskSpec& task, int n_points);

// Selected cloth points for the three observation sizes:
//   4: the corners; 8: corners + edge midpoints; 12: corners + the two
//   one-third points of every edge. Returned as node indices in a fixed,
//   documented order.
std::vector<int> selected_points(int rows, int cols, int n_points);

std::vector<double> observe(const sim::SimState& state, const TaskSpec& task, int n_points,
                            const std::vector<double>& goal);

// Replaces the goal segment of an already-built observation (HER relabeling).
void set_observation_goal(std::vector<double>& obs, const ObsLayout& layout,
                          const std::vector<double>& goal);

// Positions of the task's tracked vertices, same layout as a Goal.
std::vector<double> achieved_goal(const sim::SimState& state, const TaskSpec& task);

// Success iff every tracked vertex is within Euclidean distance delta of its
// target (closed ball). reward is 0 on success, -1 otherwise.
bool is_success(const std::vector<double>& achieved, const std::vector<double>& desired,
                double delta);
double reward(const std::vector<double>& achieved, const std::vector<double>& desired,
              double delta);

// Fresh goal in world coordinates; cloth_origin is the episode's sampled
// cloth placement origin.
std::vector<double> sample_goal(const TaskSpec& task, const Vec3& cloth_origin, Rng& rng);

}  // namespace clothrl::envs
