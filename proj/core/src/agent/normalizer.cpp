#include "clothrl/agent/normalizer.hpp"

#include <algorithm>
#include <cmath>

#include "clothrl/common/errors.hpp"

namespace clothrl::agent {

RunningNorm::RunningNorm(std::size_t dims, double clip)
    : clip_(clip), mean_(dims, 0.0), m2_(dims, 0.0) {}

void RunningNorm::update(std::span<const double> x) {
    if (x.size() != mean_.size()) throw ShapeError("RunningNorm::update: dimension mismatch");
    ++count_;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double delta = x[i] - mean_[i];
        mean_[i] += delta / double(count_);
        m2_[i] += delta * (x[i] - mean_[i]);
    }
}

double RunningNorm::stddev(std::size_t i) const {
    if (count_ < 2) return 1.0;
    const double var = m2_[i] / double(count_);
    // Floor keeps near-constant dimensions from exploding.
    return std::max(std::sqrt(std::max(var, 0.0)), 1e-2);
}

void RunningNorm::normalize_into(std::span<const double> x, double* out) const {
    if (x.size() != mean_.size()) throw ShapeError("RunningNorm::normalize: dimension mismatch");
    if (count_ == 0) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::clamp(x[i], -clip_, clip_);
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::clamp((x[i] - mean_[i]) / stddev(i), -clip_, clip_);
}

std::vector<double> RunningNorm::normalize(std::span<const double> x) const {
    std::vector<double> out(x.size());
    normalize_into(x, out.data());
    return out;
}

RunningNorm RunningNorm::restore(double clip, std::uint64_t count, std::vector<double> mean,
                                 std::vector<double> m2) {
    RunningNorm n(mean.size(), clip);
    n.count_ = count;
    n.mean_ = std::move(mean);
    n.m2_ = std::move(m2);
    if (n.mean_.size() != n.m2_.size()) throw ShapeError("RunningNorm::restore: size mismatch");
    return n;
}

}  // namespace clothrl::agent
