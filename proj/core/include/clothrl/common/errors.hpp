#pragma once

#include <stdexcept>
#include <string>

namespace clothrl {

// Bad user-supplied configuration (sizes, ranges, file contents).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Array/shape mismatch between values that must agree.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values where finite arithmetic is required.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Simulation produced non-finite state. Carries the offending node and time.
struct SimBlowupError : std::runtime_error {
    SimBlowupError(int node, double time, const std::string& what)
        : std::runtime_error(what), node(node), time(time) {}
    int node;
    double time;
};

// Malformed data fed into a container that enforces invariants.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// I/O failure (missing file, short read, bad magic).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clothrl
