#pragma once

#include <filesystem>
#include <string>

#include "probe/learner.hpp"

namespace probe {

/// Parses a JSON training config. Every field is optional and defaulted, so
/// "{}" is a complete config. Unknown keys and invalid values raise
/// ConfigError naming the field; an unreadable file raises IoError.
LearnerConfig load_config(const std::filesystem::path& path);
LearnerConfig parse_config(const std::string& text);

std::string heuristic_mode_name(HeuristicMode mode);
HeuristicMode heuristic_mode_from_name(const std::string& name);

}  // namespace probe
