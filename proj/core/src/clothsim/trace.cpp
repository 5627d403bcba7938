#include "clothrl/clothsim/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "clothrl/common/errors.hpp"

namespace clothrl::sim {

namespace {
nlohmann::json vec_array(const std::vector<Vec3>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Vec3& v : vs) arr.push_back({v.x, v.y, v.z});
    return arr;
}

std::vector<Vec3> parse_vecs(const nlohmann::json& arr) {
    std::vector<Vec3> out;
    out.reserve(arr.size());
    for (const auto& v : arr) out.push_back({v.at(0).get<double>(), v.at(1).get<double>(),
                                             v.at(2).get<double>()});
    return out;
}
}  // namespace

TraceRecord make_trace_record(const SimState& state) {
    return {state.time, state.positions, state.manip_pos, state.manip_vel, state.grasp};
}

void append_trace_record(std::ostream& out, const TraceRecord& rec) {
    nlohmann::json j;
    j["t"] = rec.time;
    j["nodes"] = vec_array(rec.nodes);
    j["manip_pos"] = vec_array(rec.manip_pos);
    j["manip_vel"] = vec_array(rec.manip_vel);
    j["grasp"] = rec.grasp;
    out << j.dump() << '\n';
}

std::vector<TraceRecord> read_trace(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("trace: bad JSON line: ") + e.what());
        }
        TraceRecord rec;
        rec.time = j.at("t").get<double>();
        rec.nodes = parse_vecs(j.at("nodes"));
        rec.manip_pos = parse_vecs(j.at("manip_pos"));
        rec.manip_vel = parse_vecs(j.at("manip_vel"));
        rec.grasp = j.at("grasp").get<std::vector<int>>();
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path);
    return read_trace(in);
}

}  // namespace clothrl::sim
