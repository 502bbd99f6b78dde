#include "fround/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace fround::log {

namespace {

Level parse_level() {
  const char* env = std::getenv("FROUND_LOG");
  if (env == nullptr) return Level::warn;
  const std::string_view v(env);
  if (v == "error" || v == "0") return Level::error;
  if (v == "warn" || v == "1") return Level::warn;
  if (v == "info" || v == "2") return Level::info;
  if (v == "debug" || v == "3") return Level::debug;
  return Level::warn;
}

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() {
  static const Level lvl = parse_level();
  return lvl;
}

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(threshold()); }

void write(Level lvl, const std::string& msg) {
  if (!enabled(lvl)) return;
  std::cerr << "[fround] " << tag(lvl) << ": " << msg << "\n";
}

void error(const std::string& msg) { write(Level::error, msg); }
void warn(const std::string& msg) { write(Level::warn, msg); }
void info(const std::string& msg) { write(Level::info, msg); }
void debug(const std::string& msg) { write(Level::debug, msg); }

}  // namespace fround::log
