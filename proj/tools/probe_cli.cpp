// probe: train, evaluate, inspect and export region-based search heuristics.
//
// Exit codes: 0 success, 2 bad configuration, 3 unreadable/unwritable input
// or output, 4 internal invariant violation.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "probe/config.hpp"
#include "probe/errors.hpp"
#include "probe/io.hpp"
#include "probe/learner.hpp"
#include "probe/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInternal = 4;

std::string iteration_summary(const probe::IterationMetrics& m) {
  std::ostringstream line;
  line << "iteration " << m.iteration << " depth " << m.depth << " solved "
       << m.solved << '/' << m.attempted << " mean_developed "
       << probe::format_double(m.mean_developed) << " success_fraction "
       << probe::format_double(m.mean_success_fraction) << " regions "
       << m.region_count;
  return line.str();
}

int cmd_train(const std::filesystem::path& config_path,
              const std::filesystem::path& model_path,
              std::filesystem::path metrics_path) {
  const probe::LearnerConfig cfg = probe::load_config(config_path);
  if (metrics_path.empty()) {
    metrics_path = model_path;
    metrics_path += ".metrics.csv";
  }
  const probe::TrainResult result =
      probe::train(cfg, [](const probe::Knowledge&, const probe::IterationMetrics& m) {
        std::cout << iteration_summary(m) << '\n';
      });
  probe::save_model(result.knowledge, cfg, model_path);
  probe::save_metrics(result.metrics, metrics_path);
  std::cout << "model written to " << model_path.string() << '\n';
  std::cout << "metrics written to " << metrics_path.string() << '\n';
  if (result.knowledge.linear && result.knowledge.linear->rank_deficient_skips > 0) {
    std::cout << "note: " << result.knowledge.linear->rank_deficient_skips
              << " rank-deficient feature trials skipped during regression\n";
  }
  return kExitOk;
}

int cmd_eval(const std::filesystem::path& model_path,
             const std::filesystem::path& problems_path, int depth, int count,
             std::uint64_t seed, const std::filesystem::path& out_path) {
  const probe::LoadedModel model = probe::load_model(model_path);
  std::vector<probe::ProblemInstance> problems;
  if (!problems_path.empty()) {
    problems = probe::load_problems(problems_path);
  } else {
    const probe::State goal = probe::goal_state();
    for (int j = 0; j < count; ++j) {
      problems.push_back(probe::scramble(goal, depth, probe::mix_seed(seed, 0, j)));
    }
  }
  const probe::IterationMetrics metrics =
      probe::evaluate(model.knowledge, problems, model.config);
  std::cout << probe::kMetricsHeader << '\n' << probe::metrics_row(metrics) << '\n';
  if (!out_path.empty()) {
    probe::save_metrics(std::vector<probe::IterationMetrics>{metrics}, out_path);
  }
  return kExitOk;
}

int cmd_inspect(const std::filesystem::path& model_path) {
  const probe::LoadedModel model = probe::load_model(model_path);
  std::vector<probe::Region> regions = model.knowledge.region_set.regions();
  std::stable_sort(regions.begin(), regions.end(),
                   [](const probe::Region& a, const probe::Region& b) {
                     return a.p_hat > b.p_hat;
                   });
  for (const probe::Region& r : regions) {
    std::cout << "p=" << probe::format_double(r.p_hat)
              << " e=" << probe::format_double(r.e) << " s=" << r.successes
              << " m=" << r.total << " box=";
    for (std::size_t a = 0; a < r.box.dims(); ++a) {
      if (a > 0) std::cout << 'x';
      std::cout << '[' << probe::format_double(r.box.lo(a)) << ','
                << probe::format_double(r.box.hi(a)) << ']';
    }
    std::cout << " c=(";
    for (std::size_t a = 0; a < r.centroid.size(); ++a) {
      if (a > 0) std::cout << ',';
      std::cout << probe::format_double(r.centroid[a]);
    }
    std::cout << ")\n";
  }
  return kExitOk;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw probe::IoError("cannot write " + path.string());
  out << body;
  if (!out) throw probe::IoError("failed writing " + path.string());
}

int cmd_export(const std::filesystem::path& model_path,
               const std::filesystem::path& metrics_path,
               const std::filesystem::path& out_dir) {
  const probe::LoadedModel model = probe::load_model(model_path);

  // The learning curve re-emits the metrics file's own value strings so the
  // two files agree byte for byte.
  std::ifstream metrics_file(metrics_path);
  if (!metrics_file) {
    throw probe::IoError("cannot read metrics file: " + metrics_path.string());
  }
  std::string header;
  if (!std::getline(metrics_file, header) || header != probe::kMetricsHeader) {
    throw probe::IoError("metrics file: unrecognized header");
  }
  std::string curve = "iteration,mean_developed,solved_fraction,mean_success_fraction\n";
  std::string line;
  int rows = 0;
  while (std::getline(metrics_file, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (fields.size() != 14) throw probe::IoError("metrics file: bad column count");
    curve += fields[0] + ',' + fields[5] + ',' + fields[4] + ',' + fields[6] + '\n';
    ++rows;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw probe::IoError("cannot create directory " + out_dir.string());

  write_file(out_dir / "learning_curve.csv", curve);

  // One rectangle dump per feature pair: each region projected onto the two
  // chosen axes with its probability.
  const auto& rs = model.knowledge.region_set;
  const std::size_t dims = rs.feature_bounds().dims();
  for (std::size_t a = 0; a < dims; ++a) {
    for (std::size_t b = a + 1; b < dims; ++b) {
      std::string table = "lo" + std::to_string(a + 1) + ",hi" + std::to_string(a + 1) +
                          ",lo" + std::to_string(b + 1) + ",hi" + std::to_string(b + 1) +
                          ",p_hat\n";
      for (const probe::Region& r : rs.regions()) {
        table += probe::format_double(r.box.lo(a)) + ',' +
                 probe::format_double(r.box.hi(a)) + ',' +
                 probe::format_double(r.box.lo(b)) + ',' +
                 probe::format_double(r.box.hi(b)) + ',' +
                 probe::format_double(r.p_hat) + '\n';
      }
      const std::string name = "regions_x" + std::to_string(a + 1) + "_x" +
                               std::to_string(b + 1) + ".csv";
      write_file(out_dir / name, table);
    }
  }
  std::cout << "exported " << rows << " learning-curve rows and "
            << dims * (dims - 1) / 2 << " region projections to "
            << out_dir.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic region-based learning of search heuristics"};
  app.require_subcommand(1);

  std::filesystem::path config_path, model_path, metrics_path, problems_path,
      out_path, out_dir;
  int depth = 10;
  int count = 20;
  std::uint64_t seed = 1;

  CLI::App* train = app.add_subcommand("train", "train a model from a config");
  train->add_option("--config", config_path, "JSON training config")->required();
  train->add_option("--out", model_path, "output model file")->required();
  train->add_option("--metrics", metrics_path,
                    "output metrics CSV (default: <out>.metrics.csv)");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a model on problems");
  eval->add_option("--model", model_path, "model file")->required();
  CLI::Option* problems_opt =
      eval->add_option("--problems", problems_path, "problem instances, one per line");
  problems_opt->excludes(eval->add_option("--depth", depth, "scramble depth for generated probes"));
  problems_opt->excludes(eval->add_option("--count", count, "number of generated probes"));
  problems_opt->excludes(eval->add_option("--seed", seed, "seed for generated probes"));
  eval->add_option("--out", out_path, "also write the metrics row to this CSV");

  CLI::App* inspect = app.add_subcommand("inspect", "print regions, highest p first");
  inspect->add_option("--model", model_path, "model file")->required();

  CLI::App* exp = app.add_subcommand("export", "write plot-ready tables");
  exp->add_option("--model", model_path, "model file")->required();
  exp->add_option("--metrics", metrics_path, "metrics CSV from training")->required();
  exp->add_option("--out-dir", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    if (app.got_subcommand(train)) {
      return cmd_train(config_path, model_path, metrics_path);
    }
    if (app.got_subcommand(eval)) {
      if (problems_path.empty() && count < 1) {
        throw probe::ConfigError("count", "must be >= 1");
      }
      if (problems_path.empty() && depth < 0) {
        throw probe::ConfigError("depth", "must be >= 0");
      }
      return cmd_eval(model_path, problems_path, depth, count, seed, out_path);
    }
    if (app.got_subcommand(inspect)) return cmd_inspect(model_path);
    if (app.got_subcommand(exp)) return cmd_export(model_path, metrics_path, out_dir);
  } catch (const probe::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const probe::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;  // unreachable
}
