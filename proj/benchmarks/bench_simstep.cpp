#include <benchmark/benchmark.h>

#include "clothrl/clothsim/dynamics.hpp"

using namespace clothrl;

static void SimStep(benchmark::State& state) {
    const int n = int(state.range(0));
    auto [mesh, sim_state] = sim::build_cloth(n, n, 100.0, 0.2, sim::Placement{{-50, -50, 0}});
    sim::SimConfig cfg;
    sim::TableGeom table;
    sim::Workspace ws;
    sim_state.manip_pos[0] = sim_state.positions[0] + Vec3{0, 0, 2.0};
    const std::vector<Vec3> cmd(1, Vec3{10.0, 5.0, 20.0});
    const std::vector<bool> grip(1, true);
    for (auto _ : state) {
        sim::sim_step(sim_state, cmd, grip, mesh, cfg, table, ws);
        benchmark::DoNotOptimize(sim_state.positions.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.substeps);
}
BENCHMARK(SimStep)->Arg(9)->Arg(17);
