#include "clothrl/demos/script.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "clothrl/common/errors.hpp"

namespace clothrl::demos {

void WaypointScript::validate() const {
    if (waypoints.size() < 2) throw ConfigError("script: need at least two waypoints");
    if (speeds.size() != waypoints.size() - 1)
        throw ConfigError("script: need one speed per segment");
    for (const double s : speeds)
        if (s <= 0.0) throw ConfigError("script: segment speeds must be positive");
    if (grasp_before_segment < 0 || grasp_before_segment > segment_count())
        throw ConfigError("script: grasp_before out of range");
    if (release_after_segment < -1 || release_after_segment >= segment_count())
        throw ConfigError("script: release_after out of range");
}

WaypointScript make_script(envs::TaskId id) {
    WaypointScript s;
    s.task = envs::to_string(id);
    switch (id) {
        case envs::TaskId::DiagonalFold:
            // Grasp the corner, arc up and over to just short of the
            // opposite corner, set down on the diagonal.
            s.waypoints = {{0.0, 0.0, 2.5}, {15.0, 15.0, 20.0}, {82.0, 82.0, 18.0},
                           {96.5, 96.5, 2.0}};
            s.speeds = {80.0, 110.0, 60.0};
            s.grasp_before_segment = 0;
            s.release_after_segment = -1;
            break;
        case envs::TaskId::SidewaysFold:
            // Grasp the near-side corner, sweep it fast across the fold so
            // the fabric flips the far moving corner over, tug the folded
            // edge straight, then set down short of the destination corner.
            s.waypoints = {{0.0, 0.0, 2.5}, {15.0, 0.0, 20.0}, {80.0, 0.0, 20.0},
                           {102.0, 0.0, 6.0}, {96.5, 0.0, 2.5}};
            s.speeds = {70.0, 150.0, 80.0, 40.0};
            s.grasp_before_segment = 0;
            s.release_after_segment = -1;
            break;
        case envs::TaskId::PlaceOnTable:
            // Swing the hanging cloth back, whip it up and forward so the
            // free end cracks over the table edge, chase toward the edge
            // while the fabric flies, then hold low so the drape pulls the
            // landed end taut.
            s.waypoints = {{0.0, 0.0, 0.0}, {-55.0, 0.0, 4.0}, {-28.0, 0.0, 32.0},
                           {2.0, 0.0, 26.0}, {0.0, 0.0, -22.0}};
            s.speeds = {60.0, 145.0, 90.0, 18.0};
            s.grasp_before_segment = 0;
            s.release_after_segment = -1;
            break;
    }
    s.validate();
    return s;
}

WaypointScript load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open script file: " + path);
    WaypointScript s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto fail = [&](const std::string& why) {
            throw ConfigError("script file line " + std::to_string(lineno) + ": " + why);
        };
        if (key == "task") {
            if (!(ls >> s.task)) fail("expected task name");
        } else if (key == "waypoint") {
            Vec3 w;
            if (!(ls >> w.x >> w.y >> w.z)) fail("expected waypoint x y z");
            s.waypoints.push_back(w);
        } else if (key == "speed") {
            double v;
            if (!(ls >> v)) fail("expected speed value");
            s.speeds.push_back(v);
        } else if (key == "grasp_before") {
            if (!(ls >> s.grasp_before_segment)) fail("expected segment index");
        } else if (key == "release_after") {
            if (!(ls >> s.release_after_segment)) fail("expected segment index");
        } else {
            fail("unknown key: " + key);
        }
    }
    s.validate();
    return s;
}

void save_script(const std::string& path, const WaypointScript& script) {
    script.validate();
    std::ofstream out(path);
    if (!out) throw IoError("cannot write script file: " + path);
    char buf[128];
    out << "task " << script.task << '\n';
    for (const Vec3& w : script.waypoints) {
        std::snprintf(buf, sizeof buf, "waypoint %.17g %.17g %.17g", w.x, w.y, w.z);
        out << buf << '\n';
    }
    for (const double v : script.speeds) {
        std::snprintf(buf, sizeof buf, "speed %.17g", v);
        out << buf << '\n';
    }
    out << "grasp_before " << script.grasp_before_segment << '\n';
    out << "release_after " << script.release_after_segment << '\n';
}

std::string to_string(RandomizationMode m) {
    switch (m) {
        case RandomizationMode::None: return "none";
        case RandomizationMode::Speed: return "speed";
        case RandomizationMode::Trajectory: return "trajectory";
        case RandomizationMode::SpeedPlusTrajectory: return "speed+trajectory";
    }
    return "?";
}

RandomizationMode randomization_from_string(const std::string& s) {
    if (s == "none") return RandomizationMode::None;
    if (s == "speed") return RandomizationMode::Speed;
    if (s == "trajectory") return RandomizationMode::Trajectory;
    if (s == "speed+trajectory" || s == "speed_trajectory") return RandomizationMode::SpeedPlusTrajectory;
    throw ConfigError("unknown randomization mode: " + s);
}

WaypointScript randomize(const WaypointScript& script, RandomizationMode mode, Rng& rng) {
    WaypointScript out = script;
    const bool speed = mode == RandomizationMode::Speed ||
                       mode == RandomizationMode::SpeedPlusTrajectory;
    const bool traj = mode == RandomizationMode::Trajectory ||
                      mode == RandomizationMode::SpeedPlusTrajectory;
    if (speed)
        for (double& v : out.speeds) v *= rng.uniform(0.5, 1.5);
    if (traj) {
        constexpr double kOffset = 20.0;
        for (std::size_t i = 1; i + 1 < out.waypoints.size(); ++i) {
            out.waypoints[i].x += rng.uniform(-kOffset, kOffset);
            out.waypoints[i].y += rng.uniform(-kOffset, kOffset);
            out.waypoints[i].z += rng.uniform(-kOffset, kOffset);
        }
    }
    return out;
}

ScriptRunner::ScriptRunner(WaypointScript script, const Vec3& cloth_origin, double max_speed,
                           double control_dt, double noise_sigma)
    : script_(std::move(script)),
      origin_(cloth_origin),
      max_speed_(max_speed),
      control_dt_(control_dt),
      noise_sigma_(noise_sigma) {
    script_.validate();
}

bool ScriptRunner::grip_engaged() const {
    if (segment_ < script_.grasp_before_segment) return false;
    if (script_.release_after_segment >= 0 && segment_ > script_.release_after_segment)
        return false;
    return true;
}

std::vector<double> ScriptRunner::action(const sim::SimState& state, int action_dims, Rng& rng) {
    const Vec3& pos = state.manip_pos[0];

    Vec3 velocity{};
    while (segment_ < script_.segment_count()) {
        const Vec3 target = origin_ + script_.waypoints[std::size_t(segment_) + 1];
        const double dist = distance(pos, target);
        if (dist <= kWaypointRadius) {
            ++segment_;
            continue;
        }
        const double speed = std::min(script_.speeds[std::size_t(segment_)], dist / control_dt_);
        velocity = (target - pos) * (speed / dist);
        break;
    }
    if (finished()) {
        // Servo on the final waypoint so noise cannot random-walk the
        // manipulator (and anything it holds) away from the endpoint.
        const Vec3 target = origin_ + script_.waypoints.back();
        const double dist = distance(pos, target);
        if (dist > 0.0) {
            const double speed = std::min(script_.speeds.back(), dist / control_dt_);
            velocity = (target - pos) * (speed / dist);
        }
    }

    std::vector<double> action(std::size_t(action_dims), 0.0);
    action[0] = velocity.x / max_speed_;
    action[1] = velocity.y / max_speed_;
    action[2] = velocity.z / max_speed_;
    if (action_dims == 4) action[3] = grip_engaged() ? 1.0 : -1.0;
    if (noise_sigma_ > 0.0) {
        const double clip = kNoiseClip * noise_sigma_;
        for (auto& a : action)
            a += std::clamp(rng.normal(0.0, noise_sigma_), -clip, clip);
    }
    for (auto& a : action) a = std::clamp(a, -1.0, 1.0);
    return action;
}

DemoGenResult generate_demos(const envs::TaskSpec& task, int n_points, int n_episodes,
                             std::uint64_t seed) {
    if (n_episodes < 1) throw ConfigError("generate_demos: need at least one episode");
    const WaypointScript script = make_script(task.id);

    DemoGenResult out;
    out.episodes.reserve(std::size_t(n_episodes));
    envs::ClothEnv env(task, n_points);
    for (int ep = 0; ep < n_episodes; ++ep) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            const std::uint64_t ep_seed = derive_seed(seed, std::uint64_t(ep), attempt);
            try {
                std::vector<double> obs = env.reset(ep_seed);
                Rng noise(derive_seed(ep_seed, 0x6e6f6973));
                ScriptRunner runner(script, env.cloth_origin(), task.physics.manip_max_speed,
                                    task.physics.dt * task.physics.substeps, 0.1);
                replay::EpisodeTrajectory traj;
                traj.steps.reserve(std::size_t(task.horizon));
                bool success = false;
                while (!env.done()) {
                    std::vector<double> action = runner.action(env.state(), task.action_dims, noise);
                    envs::StepResult res = env.step(action);
                    replay::Transition tr;
                    tr.observation = std::move(obs);
                    tr.action = std::move(action);
                    tr.reward = res.reward;
                    tr.next_observation = res.observation;
                    tr.desired = env.goal();
                    tr.achieved = res.achieved;
                    tr.done = res.done;
                    traj.steps.push_back(std::move(tr));
                    obs = std::move(res.observation);
                    if (res.done) success = res.is_success;
                }
                out.episodes.push_back(std::move(traj));
                if (success) ++out.successes;
                break;
            } catch (const SimBlowupError&) {
                ++out.regenerated;
                if (attempt > 16)
                    throw ConfigError("generate_demos: repeated simulation failures");
            }
        }
    }
    return out;
}

}  // namespace clothrl::demos
