#include "clothrl/envs/task.hpp"

#include "clothrl/common/errors.hpp"

namespace clothrl::envs {

std::string to_string(TaskId id) {
    switch (id) {
        case TaskId::DiagonalFold: return "diagonal_fold";
        case TaskId::SidewaysFold: return "sideways_fold";
        case TaskId::PlaceOnTable: return "place_on_table";
    }
    return "?";
}

TaskId task_from_string(const std::string& s) {
    if (s == "diagonal_fold" || s == "diagonal") return TaskId::DiagonalFold;
    if (s == "sideways_fold" || s == "sideways") return TaskId::SidewaysFold;
    if (s == "place_on_table" || s == "place") return TaskId::PlaceOnTable;
    throw ConfigError("unknown task: " + s);
}

EnvOverrides EnvOverrides::from_kv(const KvConfig& kv) {
    EnvOverrides o;
    o.mesh_rows = int(kv.get_int("mesh_rows", 0));
    o.mesh_cols = int(kv.get_int("mesh_cols", 0));
    o.cloth_side = kv.get_double("cloth_side", 0.0);
    o.cloth_mass = kv.get_double("cloth_mass", 0.0);
    o.horizon = int(kv.get_int("horizon", 0));
    o.k_structural = kv.get_double("k_structural", 0.0);
    o.k_shear = kv.get_double("k_shear", 0.0);
    o.k_bend = kv.get_double("k_bend", 0.0);
    o.spring_damping = kv.get_double("spring_damping", -1.0);
    o.velocity_damping = kv.get_double("velocity_damping", -1.0);
    o.friction = kv.get_double("friction", -1.0);
    o.grasp_radius = kv.get_double("grasp_radius", 0.0);
    o.manip_max_speed = kv.get_double("manip_max_speed", 0.0);
    o.substeps = int(kv.get_int("substeps", 0));
    o.substep_dt = kv.get_double("substep_dt", 0.0);
    o.goal_radius = kv.get_double("goal_radius", 0.0);
    return o;
}

TaskSpec make_task(TaskId id, const EnvOverrides& o) {
    TaskSpec t;
    t.id = id;
    t.name = to_string(id);

    t.mesh_rows = o.mesh_rows > 0 ? o.mesh_rows : 9;
    t.mesh_cols = o.mesh_cols > 0 ? o.mesh_cols : 9;
    if (t.mesh_rows < 2 || t.mesh_cols < 2) throw ConfigError("task: mesh must be at least 2x2");
    t.cloth_side = o.cloth_side > 0.0 ? o.cloth_side : 100.0;
    t.cloth_mass = o.cloth_mass > 0.0 ? o.cloth_mass : 0.2;

    sim::SimConfig& p = t.physics;
    if (o.k_structural > 0.0) p.k_structural = o.k_structural;
    if (o.k_shear > 0.0) p.k_shear = o.k_shear;
    if (o.k_bend > 0.0) p.k_bend = o.k_bend;
    if (o.spring_damping >= 0.0) p.spring_damping = o.spring_damping;
    if (o.velocity_damping >= 0.0) p.velocity_damping = o.velocity_damping;
    if (o.friction >= 0.0) p.friction = o.friction;
    if (o.grasp_radius > 0.0) p.grasp_radius = o.grasp_radius;
    if (o.substeps > 0) p.substeps = o.substeps;
    if (o.substep_dt > 0.0) p.dt = o.substep_dt;

    const int rmax = t.mesh_rows - 1;
    const int cmax = t.mesh_cols - 1;
    const double side = t.cloth_side;

    switch (id) {
        case TaskId::DiagonalFold: {
            t.horizon = 200;
            t.delta = 10.0;
            t.n_manipulators = 1;
            t.action_dims = 4;
            t.goal_dims = 3;
            t.placement_base = {-side / 2.0, -side / 2.0, 0.0};
            t.placement_bound_x = 20.0;
            t.placement_bound_y = 20.0;
            t.table = {};  // effectively unbounded tabletop at z = 0
            p.manip_max_speed = 120.0;
            t.goal_radius = 10.0;
            t.settle_steps = 5;
            t.start_vertex = t.node_index(0, 0);
            t.tracked_nodes = {t.node_index(0, 0)};
            break;
        }
        case TaskId::SidewaysFold: {
            t.horizon = 300;
            t.delta = 10.0;
            t.n_manipulators = 1;
            t.action_dims = 4;
            t.goal_dims = 6;
            t.placement_base = {-side / 2.0, -side / 2.0, 0.0};
            t.placement_bound_x = 20.0;
            t.placement_bound_y = 20.0;
            t.table = {};
            p.manip_max_speed = 150.0;
            t.goal_radius = 5.0;
            t.settle_steps = 5;
            // The fold carries the x = 0 edge onto the x = side edge. The
            // manipulator is confined to the near half of the cloth
            // (y <= midline at reset); the far moving corner can only be
            // swung through the fabric.
            t.start_vertex = t.node_index(0, 0);
            t.tracked_nodes = {t.node_index(0, 0), t.node_index(rmax, 0)};
            break;
        }
        case TaskId::PlaceOnTable: {
            t.horizon = 500;
            t.delta = 20.0;
            t.n_manipulators = 2;
            t.action_dims = 3;
            t.goal_dims = 6;
            // Cloth hangs vertically just outside the table edge at x = 0,
            // columns along +y, rows pointing down. The held corners sit
            // above the tabletop; the free corners hang below it.
            t.placement_axes.col_dir = {0.0, 1.0, 0.0};
            t.placement_axes.row_dir = {0.0, 0.0, -1.0};
            t.placement_base = {-3.0, -side / 2.0, 80.0};
            t.placement_bound_x = 0.0;
            t.placement_bound_y = 20.0;
            t.table.top_z = 0.0;
            t.table.x_min = 0.0;
            t.table.x_max = 300.0;
            t.table.y_min = -150.0;
            t.table.y_max = 150.0;
            p.manip_max_speed = 150.0;
            t.settle_steps = 50;
            t.start_vertex = t.node_index(0, 0);
            t.tracked_nodes = {t.node_index(rmax, 0), t.node_index(rmax, cmax)};
            t.grasp_init_nodes = {t.node_index(0, 0), t.node_index(0, cmax)};
            break;
        }
    }

    if (o.manip_max_speed > 0.0) p.manip_max_speed = o.manip_max_speed;
    if (o.goal_radius > 0.0) t.goal_radius = o.goal_radius;
    if (o.horizon > 0) t.horizon = o.horizon;
    return t;
}

}  // namespace clothrl::envs
