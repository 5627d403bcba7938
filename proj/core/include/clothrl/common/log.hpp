#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace clothrl {

// Verbosity from the CLOTHRL_LOG environment variable: quiet, info (default)
// or debug.
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("CLOTHRL_LOG");
        if (!env) return LogLevel::Info;
        const std::string v(env);
        if (v == "quiet" || v == "0") return LogLevel::Quiet;
        if (v == "debug" || v == "2") return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::fprintf(stderr, "[clothrl] %s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::fprintf(stderr, "[clothrl:debug] %s\n", msg.c_str());
}

}  // namespace clothrl
