#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace rampflow::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Level comes from the RAMPFLOW_LOG env var (error|warn|info|debug), default warn.
inline Level threshold() {
    static Level lvl = [] {
        const char* env = std::getenv("RAMPFLOW_LOG");
        if (env == nullptr) return Level::kWarn;
        if (std::strcmp(env, "error") == 0) return Level::kError;
        if (std::strcmp(env, "info") == 0) return Level::kInfo;
        if (std::strcmp(env, "debug") == 0) return Level::kDebug;
        return Level::kWarn;
    }();
    return lvl;
}

template <typename... Args>
void emit(Level lvl, const char* tag, const char* fmt, Args... args) {
    if (lvl > threshold()) return;
    std::fprintf(stderr, "[%s] ", tag);
    if constexpr (sizeof...(Args) == 0) {
        std::fputs(fmt, stderr);
    } else {
        std::fprintf(stderr, fmt, args...);
    }
    std::fputc('\n', stderr);
}

template <typename... Args>
void error(const char* fmt, Args... args) { emit(Level::kError, "error", fmt, args...); }
template <typename... Args>
void warn(const char* fmt, Args... args) { emit(Level::kWarn, "warn", fmt, args...); }
template <typename... Args>
void info(const char* fmt, Args... args) { emit(Level::kInfo, "info", fmt, args...); }
template <typename... Args>
void debug(const char* fmt, Args... args) { emit(Level::kDebug, "debug", fmt, args...); }

}  // namespace rampflow::log
