#pragma once

#include <atomic>
#include <iostream>
#include <string_view>

namespace leapfrog::log {

enum class Level { debug = 0, info = 1, warn = 2, quiet = 3 };

inline std::atomic<Level>& threshold()
{
    static std::atomic<Level> level{Level::warn};
    return level;
}

inline void set_level(Level level) { threshold().store(level); }

inline void write(Level level, std::string_view msg)
{
    if (level < threshold().load()) {
        return;
    }
    static constexpr const char* tags[] = {"debug", "info", "warn"};
    std::clog << "[leapfrog:" << tags[static_cast<int>(level)] << "] " << msg << '\n';
}

inline void info(std::string_view msg) { write(Level::info, msg); }
inline void warn(std::string_view msg) { write(Level::warn, msg); }

}  // namespace leapfrog::log
