#pragma once

#include <array>
#include <limits>
#include <utility>
#include <vector>

#include "clothrl/common/vec3.hpp"

namespace clothrl::sim {

enum class SpringClass { Structural, Shear, Bend };

struct Spring {
    int node_a = 0;
    int node_b = 0;
    double rest_length = 0.0;
    SpringClass cls = SpringClass::Structural;
};

// Triangle-mesh cloth on a regular grid. Node (r, c) has index r * cols + c.
struct ClothMesh {
    int rows = 0;
    int cols = 0;
    double node_mass = 0.0;
    std::vector<Vec3> rest_positions;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Spring> springs;

    int node_count() const { return rows * cols; }
    int node_index(int r, int c) const { return r * cols + c; }
};

// Where and how the flat cloth is laid out at build time: grid node (r, c)
// sits at origin + c*spacing*col_dir + r*spacing*row_dir.
struct Placement {
    Vec3 origin{};
    Vec3 col_dir{1.0, 0.0, 0.0};
    Vec3 row_dir{0.0, 1.0, 0.0};
};

struct SimState {
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    std::vector<Vec3> manip_pos;
    std::vector<Vec3> manip_vel;
    std::vector<int> grasp;  // bound node index per manipulator, -1 when free
    double time = 0.0;

    int manipulator_count() const { return int(manip_pos.size()); }
};

struct SimConfig {
    double gravity = 981.0;         // units/s^2 (1 unit = 1 cm)
    double k_structural = 60.0;     // force/unit
    double k_shear = 60.0;
    double k_bend = 0.5;            // creases must stay cheap or folds spring open
    double spring_damping = 0.03;   // force*s/unit along the spring axis
    double velocity_damping = 0.3;  // 1/s, acceleration -c*v per node
    double dt = 0.002;              // substep seconds
    int substeps = 10;              // substeps per control step
    double friction = 0.9;          // tangential damping fraction per reference substep
    double grasp_radius = 5.0;      // units
    double manip_max_speed = 80.0;  // units/s
};

struct TableGeom {
    double top_z = 0.0;
    double x_min = -1e9, x_max = 1e9;
    double y_min = -1e9, y_max = 1e9;

    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

// Axis-aligned workspace box; unconstrained axes stay at +/-infinity.
struct Workspace {
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    Vec3 lo{-kInf, -kInf, -kInf};
    Vec3 hi{kInf, kInf, kInf};

    bool inside(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
};

// Flat force-free grid with structural springs between grid neighbours, shear
// springs across cell diagonals and bend springs between next-nearest grid
// neighbours. Rest lengths are taken from the built geometry.
std::pair<ClothMesh, SimState> build_cloth(int n_rows, int n_cols, double side_length,
                                           double total_mass, const Placement& placement,
                                           int n_manipulators = 1);

}  // namespace clothrl::sim
