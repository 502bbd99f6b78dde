#pragma once

#include <string>

namespace fround::log {

enum class Level : int { error = 0, warn = 1, info = 2, debug = 3 };

/// Threshold parsed once from FROUND_LOG (error|warn|info|debug or 0..3).
/// Defaults to warn.
Level threshold();

bool enabled(Level lvl);
void write(Level lvl, const std::string& msg);

void error(const std::string& msg);
void warn(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace fround::log
