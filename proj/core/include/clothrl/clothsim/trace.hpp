#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "clothrl/clothsim/cloth.hpp"

namespace clothrl::sim {

// One rollout-dump record per control step: JSON lines with time, node
// positions, manipulator pose and grasp binding.
struct TraceRecord {
    double time = 0.0;
    std::vector<Vec3> nodes;
    std::vector<Vec3> manip_pos;
    std::vector<Vec3> manip_vel;
    std::vector<int> grasp;
};

TraceRecord make_trace_record(const SimState& state);

void append_trace_record(std::ostream& out, const TraceRecord& rec);
std::vector<TraceRecord> read_trace(std::istream& in);
std::vector<TraceRecord> read_trace_file(const std::string& path);

}  // namespace clothrl::sim
