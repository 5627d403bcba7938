#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace clothrl {

// Deterministic RNG. All distributions are implemented here rather than with
// std::*_distribution so that streams are identical for a given seed across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform();

    // Uniform in [lo, hi).
    double uniform(double lo, double hi);

    // Uniform integer in [0, n). Requires n > 0.
    std::uint64_t uniform_int(std::uint64_t n);

    // Standard normal via Box-Muller (one spare cached).
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    std::vector<double> normal_vector(std::size_t n, double mean = 0.0, double stddev = 1.0);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Stable seed mixing for derived streams (per-episode, per-seed workers):
// order-independent results when work is distributed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace clothrl
