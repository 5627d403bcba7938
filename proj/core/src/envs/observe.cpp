#include "clothrl/envs/observe.hpp"

#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::envs {

ObsLayout obs_layout(const TaskSpec& task, int n_points) {
    if (n_points != 4 && n_points != 8 && n_points != 12)
        throw ConfigError("observe: n_points must be 4, 8 or 12");
    return {n_points, task.goal_dims};
}

std::vector<int> selected_points(int rows, int cols, int n_points) {
    const int rmax = rows - 1;
    const int cmax = cols - 1;
    auto idx = [cols](int r, int c) { return r * cols + c; };
    auto frac = [](int max, double f) { return int(std::lround(max * f)); };

    std::vector<int> pts = {idx(0, 0), idx(0, cmax), idx(rmax, 0), idx(rmax, cmax)};
    if (n_points == 4) return pts;
    if (n_points == 8) {
        const int rm = frac(rmax, 0.5), cm = frac(cmax, 0.5);
        pts.insert(pts.end(), {idx(0, cm), idx(rm, 0), idx(rm, cmax), idx(rmax, cm)});
        return pts;
    }
    if (n_points == 12) {
        const int r1 = frac(rmax, 1.0 / 3.0), r2 = frac(rmax, 2.0 / 3.0);
        const int c1 = frac(cmax, 1.0 / 3.0), c2 = frac(cmax, 2.0 / 3.0);
        pts.insert(pts.end(), {idx(0, c1), idx(0, c2), idx(r1, 0), idx(r2, 0), idx(r1, cmax),
                               idx(r2, cmax), idx(rmax, c1), idx(rmax, c2)});
        return pts;
    }
    throw ConfigError("selected_points: n_points must be 4, 8 or 12");
}

std::vector<double> observe(const sim::SimState& state, const TaskSpec& task, int n_points,
                            const std::vector<double>& goal) {
    const ObsLayout layout = obs_layout(task, n_points);
    if (int(goal.size()) != layout.goal_dims)
        throw ShapeError("observe: goal size != task goal dims");

    std::vector<double> obs;
    obs.reserve(layout.total());
    for (const int node : selected_points(task.mesh_rows, task.mesh_cols, n_points)) {
        const Vec3& p = state.positions[node];
        const Vec3& v = state.velocities[node];
        obs.insert(obs.end(), {p.x, p.y, p.z, v.x, v.y, v.z});
    }
    const Vec3& mp = state.manip_pos[0];
    const Vec3& mv = state.manip_vel[0];
    obs.insert(obs.end(), {mp.x, mp.y, mp.z, mv.x, mv.y, mv.z});
    obs.insert(obs.end(), goal.begin(), goal.end());
    obs.push_back(state.grasp[0] >= 0 ? 1.0 : 0.0);
    return obs;
}

void set_observation_goal(std::vector<double>& obs, const ObsLayout& layout,
                          const std::vector<double>& goal) {
    if (int(goal.size()) != layout.goal_dims || int(obs.size()) != layout.total())
        throw ShapeError("set_observation_goal: layout mismatch");
    std::copy(goal.begin(), goal.end(), obs.begin() + layout.goal_offset());
}

std::vector<double> achieved_goal(const sim::SimState& state, const TaskSpec& task) {
    std::vector<double> out;
    out.reserve(task.tracked_nodes.size() * 3);
    for (const int node : task.tracked_nodes) {
        const Vec3& p = state.positions[node];
        out.insert(out.end(), {p.x, p.y, p.z});
    }
    return out;
}

bool is_success(const std::vector<double>& achieved, const std::vector<double>& desired,
                double delta) {
    if (achieved.size() != desired.size() || achieved.size() % 3 != 0)
        throw ShapeError("is_success: goal layout mismatch");
    for (std::size_t i = 0; i < achieved.size(); i += 3) {
        const double dx = achieved[i] - desired[i];
        const double dy = achieved[i + 1] - desired[i + 1];
        const double dz = achieved[i + 2] - desired[i + 2];
        if (std::sqrt(dx * dx + dy * dy + dz * dz) > delta) return false;
    }
    return true;
}

double reward(const std::vector<double>& achieved, const std::vector<double>& desired,
              double delta) {
    return is_success(achieved, desired, delta) ? 0.0 : -1.0;
}

std::vector<double> sample_goal(const TaskSpec& task, const Vec3& cloth_origin, Rng& rng) {
    const double side = task.cloth_side;
    switch (task.id) {
        case TaskId::DiagonalFold: {
            // A point on the fold diagonal within goal_radius of the corner
            // opposite the manipulated one.
            const Vec3 opposite = cloth_origin + Vec3{side, side, 0.0};
            const Vec3 inward = Vec3{-1.0, -1.0, 0.0} / std::sqrt(2.0);
            const double s = rng.uniform(0.0, task.goal_radius);
            const Vec3 g = opposite + inward * s;
            return {g.x, g.y, g.z};
        }
        case TaskId::SidewaysFold: {
            // One offset within the goal disc applied to both destination
            // corners keeps the pair separated by exactly the cloth side.
            const double ang = rng.uniform(0.0, 2.0 * M_PI);
            const double rad = task.goal_radius * std::sqrt(rng.uniform());
            const Vec3 offset{rad * std::cos(ang), rad * std::sin(ang), 0.0};
            const Vec3 d1 = cloth_origin + Vec3{side, 0.0, 0.0} + offset;
            const Vec3 d2 = cloth_origin + Vec3{side, side, 0.0} + offset;
            return {d1.x, d1.y, d1.z, d2.x, d2.y, d2.z};
        }
        case TaskId::PlaceOnTable: {
            // Both targets on the table top at the same distance from the
            // edge; the connecting segment is parallel to the edge (the y
            // axis) by construction.
            const double d = rng.uniform(task.place_dist_min, task.place_dist_max);
            const double y0 = cloth_origin.y;
            return {d, y0, task.table.top_z, d, y0 + side, task.table.top_z};
        }
    }
    throw ConfigError("sample_goal: unknown task");
}

}  // namespace clothrl::envs
