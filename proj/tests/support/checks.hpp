#pragma once

// Property checks shared between the unit suites and the acceptance runner.
// Each check returns an empty string on success or a failure description.

#include <string>

#include "clothrl/agent/train.hpp"
#include "clothrl/demos/study.hpp"

namespace clothrl::checks {

// numerics ------------------------------------------------------------------

// Central finite differences against analytic backward over `cases` random
// networks. Relative error must stay within `tolerance`.
std::string gradient_check(int cases, double tolerance, std::uint64_t seed);

// target' = (1 - tau) * target + tau * online must hold bit-for-bit.
std::string soft_update_exactness(std::uint64_t seed);

// First Adam step from a fresh state matches the closed form.
std::string adam_first_step_closed_form(std::uint64_t seed);

// clothsim ------------------------------------------------------------------

// Net spring force over all nodes of a jiggled mesh (gravity and velocity
// damping off) stays within `bound`.
std::string newton_third_law(double bound, std::uint64_t seed);

// No node ends up strictly inside the table body after random rollouts.
std::string contact_non_penetration(std::uint64_t seed);

// With gravity removed and damping on, kinetic energy is non-increasing
// across substeps.
std::string kinetic_energy_decay(std::uint64_t seed);

// Flat cloth on the table under zero commands: max node displacement over
// 100 control steps stays below 0.1 units.
std::string settled_cloth_displacement();

// Same seed and command stream produce bit-identical trajectories.
std::string sim_determinism(std::uint64_t seed);

// envs ----------------------------------------------------------------------

// The documented observation sizes, including both paper endpoints.
std::string observation_lengths();

// reward == 0 exactly when is_success over randomized goal pairs.
std::string reward_success_equivalence(int cases, std::uint64_t seed);

// Place goals share the distance-from-edge coordinate exactly.
std::string place_goal_parallelism(int cases, std::uint64_t seed);

// Episodes run exactly horizon steps.
std::string episode_length_exact();

// replay ---------------------------------------------------------------------

// Exhaustive relabel-reward oracle on a short recorded episode.
std::string relabel_oracle(std::uint64_t seed);

// Relabeled fraction over many draws approaches k/(k+1).
std::string relabel_fraction(int draws, double tolerance, std::uint64_t seed);

// Every batch carries exactly n_demo demo-flagged transitions.
std::string demo_count_exact(std::uint64_t seed);

// agent ----------------------------------------------------------------------

// Q-filter truth table under critics with known orderings.
std::string q_filter_truth_table();

// TD targets stay inside [-1/(1-gamma), 0].
std::string td_target_clamp(std::uint64_t seed);

// One tiny training epoch is bit-identical across reruns.
std::string epoch_determinism(std::uint64_t seed);

// shared helpers --------------------------------------------------------------

envs::TaskSpec tiny_diagonal_task(int horizon = 10);

replay::EpisodeTrajectory record_scripted_episode(const envs::TaskSpec& task, int n_points,
                                                  std::uint64_t seed);

}  // namespace clothrl::checks
