#pragma once

#include <span>
#include <vector>

#include "clothrl/clothsim/cloth.hpp"

namespace clothrl::sim {

struct SpringForces {
    Vec3 on_a;
    Vec3 on_b;
    bool singular = false;  // coincident endpoints, direction undefined
};

// Damped Hooke spring. Equal and opposite by construction.
SpringForces spring_force(const Vec3& pos_a, const Vec3& pos_b, const Vec3& vel_a,
                          const Vec3& vel_b, double rest_length, double stiffness,
                          double damping);

struct ForceInfo {
    int singular_springs = 0;
};

// Spring forces + gravity + global velocity damping. Table contact is handled
// separately in the substep loop.
std::vector<Vec3> accumulate_forces(const SimState& state, const ClothMesh& mesh,
                                    const SimConfig& config, ForceInfo* info = nullptr);

// Semi-implicit Euler: v' = v + (f/m) dt, x' = x + v' dt. Grasped nodes are
// kinematic and skipped. Throws SimBlowupError when a node turns non-finite.
void integrate(SimState& state, std::span<const Vec3> forces, double dt, const ClothMesh& mesh);

// Per-substep tangential damping fraction for the Coulomb-like contact model.
double effective_friction(double friction_coefficient, double dt);

// Projects penetrating nodes onto the table top, zeroes downward normal
// velocity and damps tangential velocity by mu_eff.
void resolve_table_contact(SimState& state, const TableGeom& table, double mu_eff);

// Clamps target velocity to max speed, advances the manipulator and clamps
// the position to the workspace box. Axes that hit a bound report zero
// realized velocity. Returns true if any axis was clamped.
bool command_manipulator(SimState& state, int manip, const Vec3& target_velocity,
                         const Workspace& workspace, double max_speed, double dt);

// Binds the nearest node within grasp_radius (ties to the lowest index).
// Nodes already held by another manipulator are skipped. Returns success.
bool try_grasp(SimState& state, const ClothMesh& mesh, int manip, double grasp_radius);
void release(SimState& state, int manip);

struct StepInfo {
    bool grasp_attempted = false;
    bool grasp_succeeded = false;
    bool released = false;
    bool workspace_clamped = false;
    int singular_springs = 0;
};

// One control step = `substeps` physics substeps. Per substep: manipulator
// command, grasp logic, forces, integration, table contact, grasp re-assert.
void sim_step(SimState& state, std::span<const Vec3> manip_commands,
              const std::vector<bool>& grip, const ClothMesh& mesh, const SimConfig& config,
              const TableGeom& table, const Workspace& workspace, StepInfo* info = nullptr);

}  // namespace clothrl::sim
