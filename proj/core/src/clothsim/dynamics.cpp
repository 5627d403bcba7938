#include "clothrl/clothsim/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::sim {

SpringForces spring_force(const Vec3& pos_a, const Vec3& pos_b, const Vec3& vel_a,
                          const Vec3& vel_b, double rest_length, double stiffness,
                          double damping) {
    SpringForces out;
    const Vec3 d = pos_b - pos_a;
    const double len = d.norm();
    if (len == 0.0) {
        out.singular = true;
        return out;
    }
    const Vec3 dir = d / len;
    const double stretch = len - rest_length;
    const double vrel = (vel_b - vel_a).dot(dir);
    const double magnitude = stiffness * stretch + damping * vrel;
    out.on_a = dir * magnitude;
    out.on_b = -out.on_a;
    return out;
}

std::vector<Vec3> accumulate_forces(const SimState& state, const ClothMesh& mesh,
                                    const SimConfig& config, ForceInfo* info) {
    const std::size_t n = state.positions.size();
    if (n != std::size_t(mesh.node_count()))
        throw ShapeError("accumulate_forces: state/mesh node count mismatch");

    const double m = mesh.node_mass;
    const Vec3 gravity{0.0, 0.0, -config.gravity * m};
    std::vector<Vec3> forces(n);
    for (std::size_t i = 0; i < n; ++i)
        forces[i] = gravity - state.velocities[i] * (config.velocity_damping * m);

    int singular = 0;
    for (const Spring& s : mesh.springs) {
        double k = config.k_structural;
        if (s.cls == SpringClass::Shear) k = config.k_shear;
        else if (s.cls == SpringClass::Bend) k = config.k_bend;
        const SpringForces f =
            spring_force(state.positions[s.node_a], state.positions[s.node_b],
                         state.velocities[s.node_a], state.velocities[s.node_b], s.rest_length, k,
                         config.spring_damping);
        if (f.singular) {
            ++singular;
            continue;
        }
        forces[s.node_a] += f.on_a;
        forces[s.node_b] += f.on_b;
    }
    if (info) info->singular_springs += singular;
    return forces;
}

void integrate(SimState& state, std::span<const Vec3> forces, double dt, const ClothMesh& mesh) {
    if (dt <= 0.0) throw ConfigError("integrate: dt must be positive");
    if (forces.size() != state.positions.size())
        throw ShapeError("integrate: forces/state size mismatch");

    const double inv_m = 1.0 / mesh.node_mass;
    for (std::size_t i = 0; i < state.positions.size(); ++i) {
        bool grasped = false;
        for (const int g : state.grasp)
            if (g == int(i)) grasped = true;
        if (grasped) continue;
        Vec3& v = state.velocities[i];
        Vec3& x = state.positions[i];
        v += forces[i] * (inv_m * dt);
        x += v * dt;
        if (!x.finite() || !v.finite())
            throw SimBlowupError(int(i), state.time,
                                 "simulation blow-up at node " + std::to_string(i) + ", t=" +
                                     std::to_string(state.time));
    }
}

double effective_friction(double friction_coefficient, double dt) {
    // friction_coefficient is the tangential damping fraction per 2 ms
    // reference substep; scale linearly with dt and cap at full stop.
    const double mu = friction_coefficient * (dt / 0.002);
    return mu < 1.0 ? mu : 1.0;
}

void resolve_table_contact(SimState& state, const TableGeom& table, double mu_eff) {
    const double keep = 1.0 - mu_eff;
    for (std::size_t i = 0; i < state.positions.size(); ++i) {
        Vec3& x = state.positions[i];
        if (x.z >= table.top_z || !table.contains(x.x, x.y)) continue;
        Vec3& v = state.velocities[i];

        // The table is a solid box below top_z: push the node out of the
        // nearest face so cloth can hang over or swing against an edge
        // without snapping to the top.
        const double d_top = table.top_z - x.z;
        const double d_xmin = x.x - table.x_min;
        const double d_xmax = table.x_max - x.x;
        const double d_ymin = x.y - table.y_min;
        const double d_ymax = table.y_max - x.y;
        const double d_side = std::min(std::min(d_xmin, d_xmax), std::min(d_ymin, d_ymax));

        // Friction acts on the top only; the sides are slick so cloth can
        // slide up a face and over the rim.
        if (d_top <= d_side) {
            x.z = table.top_z;
            if (v.z < 0.0) v.z = 0.0;
            v.x *= keep;
            v.y *= keep;
        } else if (d_side == d_xmin) {
            x.x = table.x_min;
            if (v.x > 0.0) v.x = 0.0;
        } else if (d_side == d_xmax) {
            x.x = table.x_max;
            if (v.x < 0.0) v.x = 0.0;
        } else if (d_side == d_ymin) {
            x.y = table.y_min;
            if (v.y > 0.0) v.y = 0.0;
        } else {
            x.y = table.y_max;
            if (v.y < 0.0) v.y = 0.0;
        }
    }
}

bool command_manipulator(SimState& state, int manip, const Vec3& target_velocity,
                         const Workspace& workspace, double max_speed, double dt) {
    if (!target_velocity.finite()) throw NumericError("command_manipulator: non-finite command");
    Vec3 v = target_velocity;
    const double speed = v.norm();
    if (speed > max_speed) v *= max_speed / speed;

    Vec3& p = state.manip_pos[manip];
    p += v * dt;
    bool clamped = false;
    auto clamp_axis = [&](double& pos, double& vel, double lo, double hi) {
        if (pos < lo) {
            pos = lo;
            vel = 0.0;
            clamped = true;
        } else if (pos > hi) {
            pos = hi;
            vel = 0.0;
            clamped = true;
        }
    };
    clamp_axis(p.x, v.x, workspace.lo.x, workspace.hi.x);
    clamp_axis(p.y, v.y, workspace.lo.y, workspace.hi.y);
    clamp_axis(p.z, v.z, workspace.lo.z, workspace.hi.z);
    state.manip_vel[manip] = v;
    return clamped;
}

bool try_grasp(SimState& state, const ClothMesh& mesh, int manip, double grasp_radius) {
    if (state.grasp[manip] >= 0) return true;
    const Vec3& p = state.manip_pos[manip];
    int best = -1;
    double best_d = grasp_radius;
    for (int i = 0; i < mesh.node_count(); ++i) {
        bool taken = false;
        for (const int g : state.grasp)
            if (g == i) taken = true;
        if (taken) continue;
        const double d = distance(state.positions[i], p);
        if (d < best_d || (d == best_d && best == -1)) {
            best_d = d;
            best = i;
        }
    }
    if (best < 0) return false;
    state.grasp[manip] = best;
    state.positions[best] = p;
    state.velocities[best] = state.manip_vel[manip];
    return true;
}

void release(SimState& state, int manip) { state.grasp[manip] = -1; }

void sim_step(SimState& state, std::span<const Vec3> manip_commands,
              const std::vector<bool>& grip, const ClothMesh& mesh, const SimConfig& config,
              const TableGeom& table, const Workspace& workspace, StepInfo* info) {
    const int n_manip = state.manipulator_count();
    if (int(manip_commands.size()) != n_manip || int(grip.size()) != n_manip)
        throw ShapeError("sim_step: command count != manipulator count");
    if (config.substeps < 1 || config.dt <= 0.0) throw ConfigError("sim_step: bad substep config");

    const double mu_eff = effective_friction(config.friction, config.dt);
    ForceInfo force_info;
    for (int s = 0; s < config.substeps; ++s) {
        for (int mi = 0; mi < n_manip; ++mi) {
            const bool clamped = command_manipulator(state, mi, manip_commands[mi], workspace,
                                                     config.manip_max_speed, config.dt);
            if (clamped && info) info->workspace_clamped = true;
        }
        for (int mi = 0; mi < n_manip; ++mi) {
            if (grip[mi]) {
                if (state.grasp[mi] < 0) {
                    if (info) info->grasp_attempted = true;
                    const bool ok = try_grasp(state, mesh, mi, config.grasp_radius);
                    if (ok && info) info->grasp_succeeded = true;
                }
            } else if (state.grasp[mi] >= 0) {
                release(state, mi);
                if (info) info->released = true;
            }
        }
        const std::vector<Vec3> forces = accumulate_forces(state, mesh, config, &force_info);
        integrate(state, forces, config.dt, mesh);
        resolve_table_contact(state, table, mu_eff);
        for (int mi = 0; mi < n_manip; ++mi) {
            const int node = state.grasp[mi];
            if (node >= 0) {
                state.positions[node] = state.manip_pos[mi];
                state.velocities[node] = state.manip_vel[mi];
            }
        }
        state.time += config.dt;
    }
    if (info) info->singular_springs += force_info.singular_springs;
}

}  // namespace clothrl::sim
