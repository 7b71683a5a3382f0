#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "probe/learner.hpp"

namespace probe {

/// Shortest round-trip decimal form of a double (exact on re-parse).
std::string format_double(double value);
double parse_double(const std::string& token);

/// Model file: versioned structured text holding the config echo, the
/// iteration index, the region set (one region per record) and the linear
/// coefficients when present. Round-trips exactly.
void save_model(const Knowledge& k, const LearnerConfig& cfg,
                const std::filesystem::path& path);

struct LoadedModel {
  Knowledge knowledge;
  LearnerConfig config;
};

LoadedModel load_model(const std::filesystem::path& path);  // throws IoError

/// Metrics file: one CSV row per iteration, stable column order.
extern const char* const kMetricsHeader;
std::string metrics_row(const IterationMetrics& m);
void save_metrics(std::span<const IterationMetrics> metrics,
                  const std::filesystem::path& path);
std::vector<IterationMetrics> load_metrics(const std::filesystem::path& path);

/// Problem files: one instance per line (see domain to_line).
void save_problems(std::span<const ProblemInstance> problems,
                   const std::filesystem::path& path);
std::vector<ProblemInstance> load_problems(const std::filesystem::path& path);

}  // namespace probe
