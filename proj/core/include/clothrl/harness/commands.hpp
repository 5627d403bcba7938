#pragma once

#include "clothrl/agent/train.hpp"
#include "clothrl/demos/study.hpp"
#include "clothrl/harness/experiment.hpp"

namespace clothrl::harness {

struct SeedRun {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::vector<agent::EpochStats> curve;
    std::string curve_file;
    std::string checkpoint_file;
};

struct RunReport {
    std::string fingerprint;
    std::vector<SeedRun> runs;
    std::vector<double> median_curve;  // median test success per epoch

    // Median of the last `window` entries of the median curve.
    double final_median(int window = 10) const;
};

// Trains one seed in-memory (no files); used by the report writer and tests.
SeedRun train_single_seed(const ExperimentConfig& cfg, std::uint64_t seed,
                          const std::vector<replay::EpisodeTrajectory>& demo_episodes,
                          const std::string& out_prefix);

// `train`: runs train_cycle per seed, writes per-seed curves, checkpoints,
// the median curve and report.json under cfg.out_dir. One seed failing does
// not abort the siblings.
RunReport cmd_train(const ExperimentConfig& cfg);

// `demo-gen`: writes a demonstration episode file plus the script used.
struct DemoGenReport {
    int episodes = 0;
    int successes = 0;
    std::string file;
};
DemoGenReport cmd_demo_gen(envs::TaskId task, const envs::EnvOverrides& overrides, int n_points,
                           int n_episodes, std::uint64_t seed, const std::string& out_file);

// `study-dynamics`: Table-style CSV, one row per randomization mode, mean and
// std columns per task.
struct StudyTable {
    std::vector<envs::TaskId> tasks;
    std::vector<demos::RandomizationMode> modes;
    // cell[mode][task]
    std::vector<std::vector<demos::StudyResult>> cells;
};
StudyTable cmd_study_dynamics(const std::vector<envs::TaskId>& tasks,
                              const std::vector<demos::RandomizationMode>& modes,
                              const envs::EnvOverrides& overrides, int n_episodes, int n_epochs,
                              std::uint64_t seed, const std::string& out_csv);

// `ablate-obs`: one train report per observation size.
struct AblateReport {
    std::vector<int> n_points;
    std::vector<RunReport> reports;
};
AblateReport cmd_ablate_obs(const ExperimentConfig& base, const std::vector<int>& point_sets);

// `record`: replays a trained checkpoint (or the scripted controller when
// checkpoint_file is empty) and dumps rollout JSONL plus a summary JSON.
struct RecordReport {
    int episodes = 0;
    int successes = 0;
    long long steps = 0;
    std::string rollout_file;
    std::string summary_file;
};
RecordReport cmd_record(const std::string& checkpoint_file, envs::TaskId task,
                        const envs::EnvOverrides& overrides, int n_points, int episodes,
                        std::uint64_t seed, const std::string& out_prefix);

}  // namespace clothrl::harness
