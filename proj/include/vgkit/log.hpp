#pragma once

#include <string>

// Minimal stderr logger. Level comes from the VGKIT_LOG environment
// variable: quiet|error|warn|info|debug (default warn).

namespace vgkit::log {

enum class Level { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

Level level();
void set_level(Level lvl);

void error(const std::string& msg);
void warn(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace vgkit::log
