#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace clothrl::agent {

// Per-dimension running mean/std (Welford), used to whiten observations
// before they reach the networks. Outputs are clipped to [-clip, clip].
class RunningNorm {
public:
    explicit RunningNorm(std::size_t dims = 0, double clip = 5.0);

    void update(std::span<const double> x);
    std::vector<double> normalize(std::span<const double> x) const;
    void normalize_into(std::span<const double> x, double* out) const;

    std::size_t dims() const { return mean_.size(); }
    double clip() const { return clip_; }
    std::uint64_t count() const { return count_; }
    const std::vector<double>& mean() const { return mean_; }
    const std::vector<double>& m2() const { return m2_; }

    // For checkpoint loading.
    static RunningNorm restore(double clip, std::uint64_t count, std::vector<double> mean,
                               std::vector<double> m2);

private:
    double stddev(std::size_t i) const;

    double clip_ = 5.0;
    std::uint64_t count_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

}  // namespace clothrl::agent
