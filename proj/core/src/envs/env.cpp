#include "clothrl/envs/env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "clothrl/common/errors.hpp"

namespace clothrl::envs {

namespace {
constexpr double kManipSpawnHeight = 2.5;  // above the start vertex, inside grasp radius
}

ClothEnv::ClothEnv(const TaskSpec& spec, int n_points) : spec_(spec), n_points_(n_points) {
    obs_layout(spec_, n_points_);  // validates n_points
    reset(0);
}

const std::vector<double>& ClothEnv::reset(std::uint64_t seed) {
    rng_ = Rng(seed);
    const double dx = spec_.placement_bound_x > 0.0
                          ? rng_.uniform(-spec_.placement_bound_x, spec_.placement_bound_x)
                          : 0.0;
    const double dy = spec_.placement_bound_y > 0.0
                          ? rng_.uniform(-spec_.placement_bound_y, spec_.placement_bound_y)
                          : 0.0;
    cloth_origin_ = spec_.placement_base + Vec3{dx, dy, 0.0};

    sim::Placement placement = spec_.placement_axes;
    placement.origin = cloth_origin_;
    auto [mesh, state] = sim::build_cloth(spec_.mesh_rows, spec_.mesh_cols, spec_.cloth_side,
                                          spec_.cloth_mass, placement, spec_.n_manipulators);
    mesh_ = std::move(mesh);
    state_ = std::move(state);

    if (!spec_.grasp_init_nodes.empty()) {
        for (std::size_t m = 0; m < spec_.grasp_init_nodes.size(); ++m) {
            const int node = spec_.grasp_init_nodes[m];
            state_.manip_pos[m] = state_.positions[node];
            state_.manip_vel[m] = Vec3{};
            state_.grasp[m] = node;
        }
    } else {
        state_.manip_pos[0] =
            state_.positions[spec_.start_vertex] + Vec3{0.0, 0.0, kManipSpawnHeight};
        state_.manip_vel[0] = Vec3{};
        state_.grasp[0] = -1;
    }

    workspace_ = sim::Workspace{};
    switch (spec_.id) {
        case TaskId::DiagonalFold:
            break;  // unrestricted
        case TaskId::SidewaysFold:
            // Half-space: the far half of the cloth (beyond the midline at
            // reset) is out of reach.
            workspace_.hi.y = cloth_origin_.y + spec_.cloth_side / 2.0;
            break;
        case TaskId::PlaceOnTable:
            workspace_.lo = {-150.0, spec_.table.y_min, -40.0};
            workspace_.hi = {spec_.table.x_min, spec_.table.y_max, 120.0};
            break;
    }

    // Let the cloth reach static equilibrium under gravity before the
    // episode clock starts.
    const std::vector<Vec3> zero_cmd(state_.manipulator_count(), Vec3{});
    const std::vector<bool> grip(state_.manipulator_count(), !spec_.grasp_init_nodes.empty());
    for (int i = 0; i < spec_.settle_steps; ++i)
        sim::sim_step(state_, zero_cmd, grip, mesh_, spec_.physics, spec_.table, workspace_);
    state_.time = 0.0;

    goal_ = sample_goal(spec_, cloth_origin_, rng_);
    t_ = 0;
    anytime_success_ = false;
    min_dist_.assign(spec_.tracked_nodes.size(), std::numeric_limits<double>::infinity());
    update_episode_stats();
    rebuild_observation();
    return obs_;
}

StepResult ClothEnv::step(std::span<const double> action) {
    if (int(action.size()) != spec_.action_dims)
        throw ShapeError("env step: expected " + std::to_string(spec_.action_dims) +
                         " action dims, got " + std::to_string(action.size()));
    if (done()) throw ValidationError("env step: episode is over, call reset");

    auto clamp1 = [](double v) { return std::clamp(v, -1.0, 1.0); };
    const Vec3 velocity{clamp1(action[0]) * spec_.physics.manip_max_speed,
                        clamp1(action[1]) * spec_.physics.manip_max_speed,
                        clamp1(action[2]) * spec_.physics.manip_max_speed};
    const bool grip_requested = spec_.action_dims == 4 ? clamp1(action[3]) > 0.0 : true;

    const std::vector<Vec3> commands(state_.manipulator_count(), velocity);
    const std::vector<bool> grip(state_.manipulator_count(), grip_requested);

    StepResult result;
    sim::sim_step(state_, commands, grip, mesh_, spec_.physics, spec_.table, workspace_,
                  &result.info);
    ++t_;
    update_episode_stats();

    result.achieved = achieved_goal(state_, spec_);
    result.is_success = is_success(result.achieved, goal_, spec_.delta);
    result.reward = result.is_success ? 0.0 : -1.0;
    result.done = done();
    rebuild_observation();
    result.observation = obs_;
    return result;
}

void ClothEnv::rebuild_observation() { obs_ = observe(state_, spec_, n_points_, goal_); }

void ClothEnv::update_episode_stats() {
    const std::vector<double> achieved = achieved_goal(state_, spec_);
    for (std::size_t v = 0; v < spec_.tracked_nodes.size(); ++v) {
        const double dx = achieved[3 * v] - goal_[3 * v];
        const double dy = achieved[3 * v + 1] - goal_[3 * v + 1];
        const double dz = achieved[3 * v + 2] - goal_[3 * v + 2];
        min_dist_[v] = std::min(min_dist_[v], std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    if (t_ > 0 && is_success(achieved, goal_, spec_.delta)) anytime_success_ = true;
}

void write_episode_log_header(std::ostream& out, int n_tracked) {
    out << "episode,final_success,anytime_success,steps";
    for (int v = 0; v < n_tracked; ++v) out << ",min_dist_v" << v;
    out << '\n';
}

void write_episode_log_row(std::ostream& out, int episode, bool final_success,
                           bool anytime_success, int steps, const std::vector<double>& min_dists) {
    out << episode << ',' << (final_success ? 1 : 0) << ',' << (anytime_success ? 1 : 0) << ','
        << steps;
    char buf[32];
    for (const double d : min_dists) {
        std::snprintf(buf, sizeof buf, "%.6g", d);
        out << ',' << buf;
    }
    out << '\n';
}

}  // namespace clothrl::envs
