#include "clothrl/harness/cli.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clothrl/common/log.hpp"
#include "clothrl/harness/commands.hpp"

namespace clothrl::harness {

namespace {

ExperimentConfig config_from_cli(const std::string& config_path,
                                 const std::vector<std::uint64_t>& seeds, const std::string& out,
                                 const std::string& task, const std::string& variant,
                                 int n_points) {
    KvConfig kv = config_path.empty() ? KvConfig{} : KvConfig::load(config_path);
    if (!task.empty()) kv.set("task", task);
    if (!variant.empty()) kv.set("variant", variant);
    if (n_points > 0) kv.set("n_points", (long long)n_points);
    if (!seeds.empty()) {
        std::string s;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(seeds[i]);
        }
        kv.set("seeds", s);
    }
    if (!out.empty()) kv.set("out", out);
    return ExperimentConfig::from_kv(kv);
}

envs::EnvOverrides overrides_from(const std::string& config_path) {
    if (config_path.empty()) return {};
    return envs::EnvOverrides::from_kv(KvConfig::load(config_path));
}

void print_error_json(const std::exception& e) {
    nlohmann::json j;
    j["error"]["type"] = typeid(e).name();
    j["error"]["message"] = e.what();
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Dynamic cloth manipulation: simulator, tasks, agent and studies"};
    app.require_subcommand(1);

    std::string config_path, out, task, variant, checkpoint;
    std::vector<std::uint64_t> seeds;
    int n_points = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key = value configuration file");
        cmd->add_option("--seed", seeds, "random seed (repeatable)");
        cmd->add_option("--out", out, "output directory or file");
    };

    CLI::App* train = app.add_subcommand("train", "train an agent variant on a task");
    add_common(train);
    train->add_option("--task", task, "diagonal_fold | sideways_fold | place_on_table");
    train->add_option("--variant", variant, "ddpg_demo_her | ddpg_her | ddpg_demo");
    train->add_option("--n-points", n_points, "observed cloth points: 4, 8 or 12");

    CLI::App* demo_gen = app.add_subcommand("demo-gen", "generate scripted demonstrations");
    add_common(demo_gen);
    demo_gen->add_option("--task", task, "task name")->required();
    int demo_n = 20;
    demo_gen->add_option("--n", demo_n, "episodes to generate");
    demo_gen->add_option("--n-points", n_points, "observation size stored in the demos");

    CLI::App* study = app.add_subcommand("study-dynamics",
                                         "script success under speed/trajectory randomization");
    add_common(study);
    std::vector<std::string> study_tasks, study_modes;
    int study_episodes = 100, study_epochs = 3;
    study->add_option("--task", study_tasks, "tasks to run (default: all three)");
    study->add_option("--mode", study_modes, "modes (default: all four)");
    study->add_option("--episodes", study_episodes, "episodes per epoch");
    study->add_option("--epochs", study_epochs, "epochs per cell");

    CLI::App* ablate = app.add_subcommand("ablate-obs", "train per observation size");
    add_common(ablate);
    ablate->add_option("--task", task, "task name");
    std::vector<int> point_sets{4, 8, 12};
    ablate->add_option("--points", point_sets, "observation sizes to compare");

    CLI::App* record = app.add_subcommand("record", "replay a policy and dump rollouts");
    add_common(record);
    record->add_option("--task", task, "task name")->required();
    record->add_option("--checkpoint", checkpoint, "agent checkpoint (omit for the script)");
    int rec_episodes = 1;
    record->add_option("--episodes", rec_episodes, "episodes to record");
    record->add_option("--n-points", n_points, "observation size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*train) {
            const ExperimentConfig cfg =
                config_from_cli(config_path, seeds, out, task, variant, n_points);
            log_info("train: task=" + envs::to_string(cfg.task) + " variant=" +
                     to_string(cfg.variant) + " fingerprint=" + cfg.fingerprint());
            const RunReport report = cmd_train(cfg);
            std::printf("fingerprint %s\n", report.fingerprint.c_str());
            std::printf("final_median_10 %.4f\n", report.final_median(10));
            for (const SeedRun& r : report.runs)
                std::printf("seed %llu %s\n", (unsigned long long)r.seed,
                            r.ok ? "ok" : ("failed: " + r.error).c_str());
        } else if (*demo_gen) {
            const std::uint64_t seed = seeds.empty() ? 1000 : seeds[0];
            const std::string file = out.empty() ? "demos.jsonl" : out;
            const DemoGenReport rep =
                cmd_demo_gen(envs::task_from_string(task), overrides_from(config_path),
                             n_points > 0 ? n_points : 8, demo_n, seed, file);
            std::printf("demos %d successes %d file %s\n", rep.episodes, rep.successes,
                        rep.file.c_str());
        } else if (*study) {
            std::vector<envs::TaskId> tasks;
            if (study_tasks.empty())
                tasks = {envs::TaskId::DiagonalFold, envs::TaskId::SidewaysFold,
                         envs::TaskId::PlaceOnTable};
            else
                for (const auto& t : study_tasks) tasks.push_back(envs::task_from_string(t));
            std::vector<demos::RandomizationMode> modes;
            if (study_modes.empty())
                modes = {demos::RandomizationMode::None, demos::RandomizationMode::Speed,
                         demos::RandomizationMode::Trajectory,
                         demos::RandomizationMode::SpeedPlusTrajectory};
            else
                for (const auto& m : study_modes)
                    modes.push_back(demos::randomization_from_string(m));
            const std::uint64_t seed = seeds.empty() ? 7 : seeds[0];
            const std::string file = out.empty() ? "study.csv" : out;
            const StudyTable tab = cmd_study_dynamics(tasks, modes, overrides_from(config_path),
                                                      study_episodes, study_epochs, seed, file);
            for (std::size_t m = 0; m < tab.modes.size(); ++m) {
                std::printf("%-16s", demos::to_string(tab.modes[m]).c_str());
                for (std::size_t t = 0; t < tab.tasks.size(); ++t)
                    std::printf("  %s %.2f+-%.2f", envs::to_string(tab.tasks[t]).c_str(),
                                tab.cells[m][t].mean, tab.cells[m][t].stddev);
            std::printf("\n");
            }
        } else if (*ablate) {
            const ExperimentConfig base =
                config_from_cli(config_path, seeds, out, task, "", 0);
            const AblateReport rep = cmd_ablate_obs(base, point_sets);
            for (std::size_t i = 0; i < rep.n_points.size(); ++i)
                std::printf("n_points %d final_median_10 %.4f\n", rep.n_points[i],
                            rep.reports[i].final_median(10));
        } else if (*record) {
            const std::uint64_t seed = seeds.empty() ? 0 : seeds[0];
            const std::string prefix = out.empty() ? "rollout" : out;
            const RecordReport rep =
                cmd_record(checkpoint, envs::task_from_string(task), overrides_from(config_path),
                           n_points > 0 ? n_points : 8, rec_episodes, seed, prefix);
            std::printf("episodes %d successes %d steps %lld rollout %s\n", rep.episodes,
                        rep.successes, rep.steps, rep.rollout_file.c_str());
        }
    } catch (const std::exception& e) {
        print_error_json(e);
        return 1;
    }
    return 0;
}

}  // namespace clothrl::harness
