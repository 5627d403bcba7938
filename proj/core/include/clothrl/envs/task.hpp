#pragma once

#include <string>
#include <vector>

#include "clothrl/clothsim/cloth.hpp"
#include "clothrl/common/kv.hpp"

namespace clothrl::envs {

enum class TaskId { DiagonalFold, SidewaysFold, PlaceOnTable };

std::string to_string(TaskId id);
TaskId task_from_string(const std::string& s);

// Tunables that may be overridden from a config file. Zero-initialized
// fields mean "use the task default".
struct EnvOverrides {
    int mesh_rows = 0;
    int mesh_cols = 0;
    double cloth_side = 0.0;
    double cloth_mass = 0.0;
    int horizon = 0;  // testing/scaling knob; tasks keep their stock horizons
    double k_structural = 0.0;
    double k_shear = 0.0;
    double k_bend = 0.0;
    double spring_damping = -1.0;
    double velocity_damping = -1.0;
    double friction = -1.0;
    double grasp_radius = 0.0;
    double manip_max_speed = 0.0;
    int substeps = 0;
    double substep_dt = 0.0;
    double goal_radius = 0.0;

    static EnvOverrides from_kv(const KvConfig& kv);
};

// Immutable task definition. Workspaces and goals that depend on the sampled
// cloth placement are resolved per episode by the environment.
struct TaskSpec {
    TaskId id = TaskId::DiagonalFold;
    std::string name;
    int horizon = 0;
    double delta = 0.0;
    int n_manipulators = 1;
    int action_dims = 4;
    int goal_dims = 3;

    int mesh_rows = 9;
    int mesh_cols = 9;
    double cloth_side = 100.0;
    double cloth_mass = 0.2;

    sim::SimConfig physics;
    sim::TableGeom table;
    sim::Placement placement_axes;
    Vec3 placement_base;
    double placement_bound_x = 0.0;
    double placement_bound_y = 0.0;

    double goal_radius = 10.0;      // Diagonal / Sideways goal sampling
    double place_dist_min = 15.0;   // Place: distance-from-edge range
    double place_dist_max = 45.0;

    int settle_steps = 0;  // control steps run at reset before the episode starts

    // Grid coordinates resolved against mesh_rows/mesh_cols.
    int start_vertex = 0;               // manipulator default pose anchor
    std::vector<int> tracked_nodes;     // goal vertices, fixed order
    std::vector<int> grasp_init_nodes;  // pre-bound at reset (Place)

    int node_index(int r, int c) const { return r * mesh_cols + c; }
};

TaskSpec make_task(TaskId id, const EnvOverrides& overrides = {});

}  // namespace clothrl::envs
