#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "clothrl/clothsim/dynamics.hpp"
#include "clothrl/envs/observe.hpp"

namespace clothrl::envs {

struct StepResult {
    std::vector<double> observation;
    double reward = -1.0;
    bool is_success = false;
    bool done = false;
    std::vector<double> achieved;
    sim::StepInfo info;
};

// Goal-conditioned fixed-horizon episode over the cloth simulator. Episodes
// never terminate early; done is reported at t == horizon only.
class ClothEnv {
public:
    ClothEnv(const TaskSpec& spec, int n_points);

    // New episode: sample placement, build the cloth, settle, sample a goal.
    const std::vector<double>& reset(std::uint64_t seed);

    // Action components in [-1, 1] (clamped): target velocity xyz scaled by
    // the task max speed, plus a >0 grip request when the task has one. The
    // Place task broadcasts one command to both manipulators.
    StepResult step(std::span<const double> action);

    const TaskSpec& spec() const { return spec_; }
    int n_points() const { return n_points_; }
    const std::vector<double>& observation() const { return obs_; }
    const std::vector<double>& goal() const { return goal_; }
    std::vector<double> achieved() const { return achieved_goal(state_, spec_); }
    const sim::SimState& state() const { return state_; }
    const sim::ClothMesh& mesh() const { return mesh_; }
    const sim::Workspace& workspace() const { return workspace_; }
    const Vec3& cloth_origin() const { return cloth_origin_; }
    int t() const { return t_; }
    bool done() const { return t_ >= spec_.horizon; }

    // Per-episode statistics for the log rows.
    bool anytime_success() const { return anytime_success_; }
    const std::vector<double>& min_distances() const { return min_dist_; }

private:
    void rebuild_observation();
    void update_episode_stats();

    TaskSpec spec_;
    int n_points_;
    sim::ClothMesh mesh_;
    sim::SimState state_;
    sim::Workspace workspace_;
    Vec3 cloth_origin_;
    std::vector<double> goal_;
    std::vector<double> obs_;
    std::vector<double> min_dist_;
    bool anytime_success_ = false;
    int t_ = 0;
    Rng rng_;
};

// Episode log rows (CSV): episode, final_success, anytime_success, steps,
// then the per-tracked-vertex minimum distance over the episode.
void write_episode_log_header(std::ostream& out, int n_tracked);
void write_episode_log_row(std::ostream& out, int episode, bool final_success,
                           bool anytime_success, int steps, const std::vector<double>& min_dists);

}  // namespace clothrl::envs
