#include "clothrl/clothsim/cloth.hpp"

#include "clothrl/common/errors.hpp"

namespace clothrl::sim {

std::pair<ClothMesh, SimState> build_cloth(int n_rows, int n_cols, double side_length,
                                           double total_mass, const Placement& placement,
                                           int n_manipulators) {
    if (n_rows < 2 || n_cols < 2) throw ConfigError("build_cloth: grid must be at least 2x2");
    if (side_length <= 0.0) throw ConfigError("build_cloth: side_length must be positive");
    if (total_mass <= 0.0) throw ConfigError("build_cloth: total_mass must be positive");
    if (n_manipulators < 1) throw ConfigError("build_cloth: need at least one manipulator");

    ClothMesh mesh;
    mesh.rows = n_rows;
    mesh.cols = n_cols;
    mesh.node_mass = total_mass / double(n_rows * n_cols);

    const double dc = side_length / double(n_cols - 1);
    const double dr = side_length / double(n_rows - 1);
    mesh.rest_positions.resize(std::size_t(n_rows) * n_cols);
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < n_cols; ++c)
            mesh.rest_positions[mesh.node_index(r, c)] =
                placement.origin + placement.col_dir * (dc * c) + placement.row_dir * (dr * r);

    for (int r = 0; r + 1 < n_rows; ++r)
        for (int c = 0; c + 1 < n_cols; ++c) {
            mesh.triangles.push_back(
                {mesh.node_index(r, c), mesh.node_index(r + 1, c), mesh.node_index(r, c + 1)});
            mesh.triangles.push_back({mesh.node_index(r, c + 1), mesh.node_index(r + 1, c),
                                      mesh.node_index(r + 1, c + 1)});
        }

    auto add_spring = [&](int a, int b, SpringClass cls) {
        const double rest = distance(mesh.rest_positions[a], mesh.rest_positions[b]);
        mesh.springs.push_back({a, b, rest, cls});
    };
    for (int r = 0; r < n_rows; ++r)
        for (int c = 0; c < n_cols; ++c) {
            if (c + 1 < n_cols) add_spring(mesh.node_index(r, c), mesh.node_index(r, c + 1),
                                           SpringClass::Structural);
            if (r + 1 < n_rows) add_spring(mesh.node_index(r, c), mesh.node_index(r + 1, c),
                                           SpringClass::Structural);
            if (r + 1 < n_rows && c + 1 < n_cols) {
                add_spring(mesh.node_index(r, c), mesh.node_index(r + 1, c + 1), SpringClass::Shear);
                add_spring(mesh.node_index(r, c + 1), mesh.node_index(r + 1, c), SpringClass::Shear);
            }
            if (c + 2 < n_cols)
                add_spring(mesh.node_index(r, c), mesh.node_index(r, c + 2), SpringClass::Bend);
            if (r + 2 < n_rows)
                add_spring(mesh.node_index(r, c), mesh.node_index(r + 2, c), SpringClass::Bend);
        }

    SimState state;
    state.positions = mesh.rest_positions;
    state.velocities.assign(mesh.rest_positions.size(), Vec3{});
    state.manip_pos.assign(std::size_t(n_manipulators), placement.origin);
    state.manip_vel.assign(std::size_t(n_manipulators), Vec3{});
    state.grasp.assign(std::size_t(n_manipulators), -1);
    return {std::move(mesh), std::move(state)};
}

}  // namespace clothrl::sim
