#include "vgkit/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace vgkit::log {

namespace {

Level parse_env() {
  const char* env = std::getenv("VGKIT_LOG");
  if (env == nullptr) return Level::warn;
  const std::string v = env;
  if (v == "quiet") return Level::quiet;
  if (v == "error") return Level::error;
  if (v == "warn") return Level::warn;
  if (v == "info") return Level::info;
  if (v == "debug") return Level::debug;
  return Level::warn;
}

Level g_level = parse_env();
std::mutex g_mutex;

void emit(Level lvl, const char* tag, const std::string& msg) {
  if (static_cast<int>(lvl) > static_cast<int>(g_level)) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << tag << msg << '\n';
}

}  // namespace

Level level() { return g_level; }
void set_level(Level lvl) { g_level = lvl; }

void error(const std::string& msg) { emit(Level::error, "error: ", msg); }
void warn(const std::string& msg) { emit(Level::warn, "warning: ", msg); }
void info(const std::string& msg) { emit(Level::info, "info: ", msg); }
void debug(const std::string& msg) { emit(Level::debug, "debug: ", msg); }

}  // namespace vgkit::log
