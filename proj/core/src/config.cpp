#include "probe/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "probe/errors.hpp"

namespace probe {

std::string heuristic_mode_name(HeuristicMode mode) {
  return mode == HeuristicMode::discrete ? "discrete" : "linear";
}

HeuristicMode heuristic_mode_from_name(const std::string& name) {
  if (name == "discrete") return HeuristicMode::discrete;
  if (name == "linear") return HeuristicMode::linear;
  throw ConfigError("heuristic_mode", "expected 'discrete' or 'linear'");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "iterations",     "problems_per_iteration",
    "depth_schedule", "budget",
    "heuristic_mode", "z",
    "laplace_a",      "laplace_b",
    "min_cell_count", "regression_tolerance",
    "seed"};

template <typename T>
T require_type(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(key, "wrong value type");
  }
}

}  // namespace

LearnerConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("(document)", e.what());
  }
  if (!j.is_object()) throw ConfigError("(document)", "expected a JSON object");

  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown field");
  }

  LearnerConfig cfg;
  if (j.contains("iterations")) cfg.iterations = require_type<int>(j["iterations"], "iterations");
  if (j.contains("problems_per_iteration")) {
    cfg.problems_per_iteration =
        require_type<int>(j["problems_per_iteration"], "problems_per_iteration");
  }
  if (j.contains("depth_schedule")) {
    cfg.depth_schedule =
        require_type<std::vector<int>>(j["depth_schedule"], "depth_schedule");
  }
  if (j.contains("budget")) {
    cfg.budget.max_developed = require_type<int>(j["budget"], "budget");
  }
  if (j.contains("heuristic_mode")) {
    cfg.heuristic_mode = heuristic_mode_from_name(
        require_type<std::string>(j["heuristic_mode"], "heuristic_mode"));
  }
  if (j.contains("z")) cfg.estimator.z = require_type<double>(j["z"], "z");
  if (j.contains("laplace_a")) {
    cfg.estimator.laplace_a = require_type<double>(j["laplace_a"], "laplace_a");
  }
  if (j.contains("laplace_b")) {
    cfg.estimator.laplace_b = require_type<double>(j["laplace_b"], "laplace_b");
  }
  if (j.contains("min_cell_count")) {
    cfg.estimator.min_cell_count =
        require_type<int>(j["min_cell_count"], "min_cell_count");
  }
  if (j.contains("regression_tolerance")) {
    cfg.regression_tolerance =
        require_type<double>(j["regression_tolerance"], "regression_tolerance");
  }
  if (j.contains("seed")) {
    cfg.seed = require_type<std::uint64_t>(j["seed"], "seed");
  }
  cfg.validate();
  return cfg;
}

LearnerConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace probe
