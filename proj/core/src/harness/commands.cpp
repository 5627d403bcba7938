#include "clothrl/harness/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "clothrl/clothsim/trace.hpp"
#include "clothrl/common/errors.hpp"
#include "clothrl/replay/persist.hpp"

namespace clothrl::harness {

namespace fs = std::filesystem;

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_curve_header(std::ostream& out) {
    out << "epoch,success_rate,anytime_success_rate,critic_loss,actor_loss,filter_pass_rate,"
           "episodes\n";
}

void write_curve_row(std::ostream& out, const agent::EpochStats& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d,%.6g,%.6g,%.10g,%.10g,%.6g,%d\n", s.epoch, s.success_rate,
                  s.anytime_success_rate, s.critic_loss, s.actor_loss, s.filter_pass_rate,
                  s.episodes_collected);
    out << buf;
}

std::vector<replay::EpisodeTrajectory> obtain_demos(const ExperimentConfig& cfg) {
    if (cfg.agent.n_demo == 0 && cfg.agent.lambda2 == 0.0) return {};
    if (!cfg.demo_file.empty()) {
        replay::LoadedEpisodes loaded = replay::load_episodes(cfg.demo_file);
        const std::string expect = envs::to_string(cfg.task);
        if (loaded.task_name != expect)
            throw ConfigError("demo file is for task '" + loaded.task_name + "', expected '" +
                              expect + "'");
        return std::move(loaded.episodes);
    }
    const demos::DemoGenResult gen =
        demos::generate_demos(cfg.task_spec(), cfg.n_points, cfg.demo_episodes, cfg.demo_seed);
    return gen.episodes;
}

}  // namespace

double RunReport::final_median(int window) const {
    if (median_curve.empty()) return 0.0;
    const int n = int(median_curve.size());
    const int w = std::min(window, n);
    std::vector<double> tail(median_curve.end() - w, median_curve.end());
    return median_of(std::move(tail));
}

SeedRun train_single_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                          const std::vector<replay::EpisodeTrajectory>& demo_episodes,
                          const std::string& out_prefix) {
    SeedRun run;
    run.seed = seed;
    try {
        const envs::TaskSpec spec = cfg.task_spec();
        envs::ClothEnv env(spec, cfg.n_points);
        const envs::ObsLayout layout = envs::obs_layout(spec, cfg.n_points);

        Rng init_rng(derive_seed(seed, 0x696e6974));
        agent::AgentNets nets =
            agent::AgentNets::init(layout.total(), spec.action_dims, cfg.agent, init_rng);
        agent::RunningNorm norm(std::size_t(layout.total()), cfg.agent.norm_clip);

        replay::EpisodeBuffer main_buffer(std::size_t(cfg.agent.buffer_capacity));
        std::unique_ptr<replay::EpisodeBuffer> demo_buffer;
        if (!demo_episodes.empty()) {
            demo_buffer = std::make_unique<replay::EpisodeBuffer>(demo_episodes.size());
            for (const auto& ep : demo_episodes) {
                demo_buffer->store_episode(ep);
                agent::update_normalizer(norm, ep);
            }
        }

        std::ofstream curve;
        if (!out_prefix.empty()) {
            run.curve_file = out_prefix + "_curve.csv";
            curve.open(run.curve_file);
            if (!curve) throw IoError("cannot write curve file: " + run.curve_file);
            write_curve_header(curve);
        }

        const agent::EpochCallback on_epoch = [&](const agent::EpochStats& s,
                                                  const agent::AgentNets& n,
                                                  const agent::RunningNorm& rn) {
            if (curve.is_open()) {
                write_curve_row(curve, s);
                curve.flush();
            }
            if (!out_prefix.empty() && cfg.agent.checkpoint_stride > 0 &&
                (s.epoch + 1) % cfg.agent.checkpoint_stride == 0)
                agent::save_agent_checkpoint(
                    out_prefix + "_epoch" + std::to_string(s.epoch) + ".ckpt", n, rn);
        };

        const agent::TrainStats stats = agent::train_cycle(
            env, nets, norm, main_buffer, demo_buffer.get(), cfg.agent, seed, on_epoch);
        run.curve = stats.epochs;
        if (!out_prefix.empty()) {
            run.checkpoint_file = out_prefix + "_final.ckpt";
            agent::save_agent_checkpoint(run.checkpoint_file, nets, norm);
        }
        run.ok = true;
    } catch (const std::exception& e) {
        run.ok = false;
        run.error = e.what();
    }
    return run;
}

RunReport cmd_train(const ExperimentConfig& cfg) {
    RunReport report;
    report.fingerprint = cfg.fingerprint();
    fs::create_directories(cfg.out_dir);
    cfg.effective_kv().save(cfg.out_dir + "/config.txt");

    const std::vector<replay::EpisodeTrajectory> demo_episodes = obtain_demos(cfg);

    for (const std::uint64_t seed : cfg.seeds) {
        const std::string prefix = cfg.out_dir + "/seed" + std::to_string(seed);
        report.runs.push_back(train_single_seed(cfg, seed, demo_episodes, prefix));
    }

    // Median curve over the seeds that finished.
    std::size_t max_len = 0;
    for (const SeedRun& r : report.runs)
        if (r.ok) max_len = std::max(max_len, r.curve.size());
    for (std::size_t e = 0; e < max_len; ++e) {
        std::vector<double> vals;
        for (const SeedRun& r : report.runs)
            if (r.ok && e < r.curve.size()) vals.push_back(r.curve[e].success_rate);
        report.median_curve.push_back(median_of(std::move(vals)));
    }

    {
        std::ofstream median(cfg.out_dir + "/median.csv");
        median << "epoch,median_success\n";
        for (std::size_t e = 0; e < report.median_curve.size(); ++e)
            median << e << ',' << report.median_curve[e] << '\n';
    }
    {
        nlohmann::json j;
        j["fingerprint"] = report.fingerprint;
        j["task"] = envs::to_string(cfg.task);
        j["variant"] = to_string(cfg.variant);
        j["n_points"] = cfg.n_points;
        j["final_median_10"] = report.final_median(10);
        nlohmann::json runs = nlohmann::json::array();
        for (const SeedRun& r : report.runs) {
            nlohmann::json jr;
            jr["seed"] = r.seed;
            jr["ok"] = r.ok;
            if (!r.ok) jr["error"] = r.error;
            jr["curve_file"] = r.curve_file;
            jr["checkpoint_file"] = r.checkpoint_file;
            if (!r.curve.empty()) jr["final_success"] = r.curve.back().success_rate;
            runs.push_back(jr);
        }
        j["runs"] = runs;
        std::ofstream out(cfg.out_dir + "/report.json");
        out << j.dump(2) << '\n';
    }
    return report;
}

DemoGenReport cmd_demo_gen(envs::TaskId task, const envs::EnvOverrides& overrides, int n_points,
                           int n_episodes, std::uint64_t seed, const std::string& out_file) {
    const envs::TaskSpec spec = envs::make_task(task, overrides);
    const demos::DemoGenResult gen = demos::generate_demos(spec, n_points, n_episodes, seed);

    replay::EpisodeBuffer buffer(gen.episodes.size());
    for (const auto& ep : gen.episodes) buffer.store_episode(ep);
    if (const fs::path parent = fs::path(out_file).parent_path(); !parent.empty())
        fs::create_directories(parent);
    replay::save_episodes(out_file, buffer, envs::to_string(task));
    demos::save_script(out_file + ".script", demos::make_script(task));

    return {n_episodes, gen.successes, out_file};
}

StudyTable cmd_study_dynamics(const std::vector<envs::TaskId>& tasks,
                              const std::vector<demos::RandomizationMode>& modes,
                              const envs::EnvOverrides& overrides, int n_episodes, int n_epochs,
                              std::uint64_t seed, const std::string& out_csv) {
    StudyTable table;
    table.tasks = tasks;
    table.modes = modes;
    table.cells.resize(modes.size());
    for (std::size_t m = 0; m < modes.size(); ++m) {
        for (const envs::TaskId task : tasks) {
            const envs::TaskSpec spec = envs::make_task(task, overrides);
            // Stream the seed per (task, mode) cell so cells are independent.
            const std::uint64_t cell_seed =
                derive_seed(seed, std::uint64_t(task), std::uint64_t(modes[m]));
            table.cells[m].push_back(
                demos::run_randomization_study(spec, modes[m], n_episodes, n_epochs, cell_seed));
        }
    }

    if (!out_csv.empty()) {
        if (const fs::path parent = fs::path(out_csv).parent_path(); !parent.empty())
            fs::create_directories(parent);
        std::ofstream out(out_csv);
        if (!out) throw IoError("cannot write study CSV: " + out_csv);
        out << "mode";
        for (const envs::TaskId t : tasks)
            out << ',' << envs::to_string(t) << "_mean," << envs::to_string(t) << "_std";
        out << '\n';
        for (std::size_t m = 0; m < modes.size(); ++m) {
            out << demos::to_string(modes[m]);
            char buf[64];
            for (std::size_t t = 0; t < tasks.size(); ++t) {
                std::snprintf(buf, sizeof buf, ",%.4f,%.4f", table.cells[m][t].mean,
                              table.cells[m][t].stddev);
                out << buf;
            }
            out << '\n';
        }
    }
    return table;
}

AblateReport cmd_ablate_obs(const ExperimentConfig& base, const std::vector<int>& point_sets) {
    AblateReport report;
    for (const int np : point_sets) {
        ExperimentConfig cfg = base;
        cfg.n_points = np;
        cfg.out_dir = base.out_dir + "/np" + std::to_string(np);
        report.n_points.push_back(np);
        report.reports.push_back(cmd_train(cfg));
    }
    return report;
}

RecordReport cmd_record(const std::string& checkpoint_file, envs::TaskId task,
                        const envs::EnvOverrides& overrides, int n_points, int episodes,
                        std::uint64_t seed, const std::string& out_prefix) {
    const envs::TaskSpec spec = envs::make_task(task, overrides);
    envs::ClothEnv env(spec, n_points);

    const bool scripted = checkpoint_file.empty();
    agent::AgentSnapshot snap;
    agent::AgentNets policy_nets;
    if (!scripted) {
        snap = agent::load_agent_checkpoint(checkpoint_file);
        const envs::ObsLayout layout = envs::obs_layout(spec, n_points);
        if (snap.actor.input_size() != layout.total())
            throw ConfigError("checkpoint actor expects " +
                              std::to_string(snap.actor.input_size()) + " inputs, task/" +
                              std::to_string(n_points) + " points gives " +
                              std::to_string(layout.total()));
        policy_nets.actor = snap.actor;
        policy_nets.critic = snap.critic;
    }

    RecordReport rec;
    rec.episodes = episodes;
    rec.rollout_file = out_prefix + ".jsonl";
    rec.summary_file = out_prefix + ".summary.json";
    if (const fs::path parent = fs::path(out_prefix).parent_path(); !parent.empty())
        fs::create_directories(parent);
    std::ofstream out(rec.rollout_file);
    if (!out) throw IoError("cannot write rollout file: " + rec.rollout_file);

    Rng noise(derive_seed(seed, 0x7265634e));
    for (int ep = 0; ep < episodes; ++ep) {
        const std::uint64_t ep_seed = derive_seed(seed, std::uint64_t(ep));
        env.reset(ep_seed);
        demos::ScriptRunner runner(demos::make_script(task), env.cloth_origin(),
                                   spec.physics.manip_max_speed,
                                   spec.physics.dt * spec.physics.substeps,
                                   scripted ? 0.1 : 0.0);
        bool success = false;
        while (!env.done()) {
            std::vector<double> action;
            if (scripted) {
                action = runner.action(env.state(), spec.action_dims, noise);
            } else {
                action = agent::select_action(policy_nets, snap.norm, env.observation(), 0.0,
                                              noise, /*explore=*/false);
            }
            const envs::StepResult res = env.step(action);
            sim::TraceRecord record = sim::make_trace_record(env.state());
            nlohmann::json j;
            j["ep"] = ep;
            j["t"] = record.time;
            nlohmann::json nodes = nlohmann::json::array();
            for (const Vec3& v : record.nodes) nodes.push_back({v.x, v.y, v.z});
            j["nodes"] = nodes;
            nlohmann::json mp = nlohmann::json::array(), mv = nlohmann::json::array();
            for (const Vec3& v : record.manip_pos) mp.push_back({v.x, v.y, v.z});
            for (const Vec3& v : record.manip_vel) mv.push_back({v.x, v.y, v.z});
            j["manip_pos"] = mp;
            j["manip_vel"] = mv;
            j["grasp"] = record.grasp;
            out << j.dump() << '\n';
            ++rec.steps;
            if (res.done) success = res.is_success;
        }
        if (success) ++rec.successes;
    }

    nlohmann::json summary;
    summary["task"] = envs::to_string(task);
    summary["episodes"] = rec.episodes;
    summary["successes"] = rec.successes;
    summary["success_rate"] = episodes > 0 ? double(rec.successes) / episodes : 0.0;
    summary["steps"] = rec.steps;
    summary["policy"] = scripted ? "scripted" : checkpoint_file;
    std::ofstream sum(rec.summary_file);
    sum << summary.dump(2) << '\n';
    return rec;
}

}  // namespace clothrl::harness
