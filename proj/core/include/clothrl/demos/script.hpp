#pragma once

#include <string>

#include "clothrl/envs/env.hpp"
#include "clothrl/replay/replay.hpp"

namespace clothrl::demos {

// Hand-authored waypoint controller data. Waypoints are offsets in the cloth
// reference frame (added to the episode's sampled cloth origin); segment i
// runs from waypoint i to waypoint i+1 at speeds[i].
struct WaypointScript {
    std::string task;
    std::vector<Vec3> waypoints;
    std::vector<double> speeds;
    int grasp_before_segment = 0;
    int release_after_segment = -1;  // -1: hold the grasp to the end

    int segment_count() const { return int(waypoints.size()) - 1; }
    void validate() const;

    bool operator==(const WaypointScript&) const = default;
};

// The committed script for each task.
WaypointScript make_script(envs::TaskId id);

// Script files: plain text, one item per line (task, waypoint x y z, speed v,
// grasp_before i, release_after j).
WaypointScript load_script(const std::string& path);
void save_script(const std::string& path, const WaypointScript& script);

enum class RandomizationMode { None, Speed, Trajectory, SpeedPlusTrajectory };

std::string to_string(RandomizationMode m);
RandomizationMode randomization_from_string(const std::string& s);

// Speed: segment speeds scaled by U(0.5, 1.5). Trajectory: interior
// waypoints offset by U(+-20) per axis; the first and last waypoints are
// never moved. Speed draws happen before trajectory draws.
WaypointScript randomize(const WaypointScript& script, RandomizationMode mode, Rng& rng);

// Follows the script: proportional velocity command toward the current
// waypoint at segment speed (waypoints advance within 2 units), grip per the
// schedule, plus clipped Gaussian action noise when noise_sigma > 0.
class ScriptRunner {
public:
    ScriptRunner(WaypointScript script, const Vec3& cloth_origin, double max_speed,
                 double control_dt, double noise_sigma);

    std::vector<double> action(const sim::SimState& state, int action_dims, Rng& rng);

    int segment() const { return segment_; }
    bool finished() const { return segment_ >= script_.segment_count(); }
    bool grip_engaged() const;

    static constexpr double kWaypointRadius = 2.0;
    static constexpr double kNoiseClip = 2.0;  // in sigmas

private:
    WaypointScript script_;
    Vec3 origin_;
    double max_speed_;
    double control_dt_;
    double noise_sigma_;
    int segment_ = 0;
};

struct DemoGenResult {
    std::vector<replay::EpisodeTrajectory> episodes;
    int successes = 0;       // final-step successes
    int regenerated = 0;     // episodes retried after a simulation failure
};

// n_episodes rollouts of the unrandomized noisy script through the real
// environment; imperfect episodes are kept. Per-episode seeds derive from
// `seed` so results are order-independent.
DemoGenResult generate_demos(const envs::TaskSpec& task, int n_points, int n_episodes,
                             std::uint64_t seed);

}  // namespace clothrl::demos
