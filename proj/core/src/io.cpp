#include "probe/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "probe/config.hpp"
#include "probe/errors.hpp"

namespace probe {

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw IoError("cannot format double");
  return std::string(buffer, ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw IoError("malformed number: '" + token + "'");
  }
  return value;
}

namespace {

constexpr const char* kModelMagic = "probe-model";
constexpr int kModelVersion = 1;

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string word(const char* what) {
    std::string token;
    if (!(in_ >> token)) throw IoError(std::string("model file truncated at ") + what);
    return token;
  }

  void expect(const char* literal) {
    const std::string token = word(literal);
    if (token != literal) {
      throw IoError(std::string("model file: expected '") + literal + "', got '" +
                    token + "'");
    }
  }

  double real(const char* what) { return parse_double(word(what)); }

  long long integer(const char* what) {
    const std::string token = word(what);
    try {
      return std::stoll(token);
    } catch (const std::exception&) {
      throw IoError(std::string("model file: bad integer for ") + what);
    }
  }

  std::uint64_t unsigned_integer(const char* what) {
    const long long v = integer(what);
    if (v < 0) throw IoError(std::string("model file: negative count for ") + what);
    return static_cast<std::uint64_t>(v);
  }

 private:
  std::istream& in_;
};

Hyperrectangle read_box(TokenReader& reader, std::size_t dims) {
  FeatureVector lo(dims), hi(dims);
  for (std::size_t a = 0; a < dims; ++a) {
    lo[a] = reader.real("box lo");
    hi[a] = reader.real("box hi");
  }
  return Hyperrectangle(std::move(lo), std::move(hi));
}

}  // namespace

void save_model(const Knowledge& k, const LearnerConfig& cfg,
                const std::filesystem::path& path) {
  std::ostringstream out;
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "config iterations " << cfg.iterations << '\n';
  out << "config problems_per_iteration " << cfg.problems_per_iteration << '\n';
  out << "config depth_schedule " << cfg.effective_depth_schedule().size() << ' '
      << join_ints(cfg.effective_depth_schedule()) << '\n';
  out << "config budget " << cfg.budget.max_developed << '\n';
  out << "config heuristic_mode " << heuristic_mode_name(cfg.heuristic_mode) << '\n';
  out << "config z " << format_double(cfg.estimator.z) << '\n';
  out << "config laplace_a " << format_double(cfg.estimator.laplace_a) << '\n';
  out << "config laplace_b " << format_double(cfg.estimator.laplace_b) << '\n';
  out << "config min_cell_count " << cfg.estimator.min_cell_count << '\n';
  out << "config regression_tolerance " << format_double(cfg.regression_tolerance)
      << '\n';
  out << "config seed " << cfg.seed << '\n';
  out << "iteration_index " << k.iteration_index << '\n';
  out << "clamped " << k.region_set.clamp_count() << '\n';

  const RegionSet& rs = k.region_set;
  const std::size_t dims = rs.feature_bounds().dims();
  out << "bounds " << dims;
  for (std::size_t a = 0; a < dims; ++a) {
    out << ' ' << format_double(rs.feature_bounds().lo(a)) << ' '
        << format_double(rs.feature_bounds().hi(a));
  }
  out << '\n';

  out << "regions " << rs.size() << '\n';
  for (const Region& r : rs.regions()) {
    out << "region";
    for (std::size_t a = 0; a < dims; ++a) {
      out << ' ' << format_double(r.box.lo(a)) << ' ' << format_double(r.box.hi(a));
    }
    out << ' ' << format_double(r.p_hat) << ' ' << format_double(r.e) << ' '
        << r.successes << ' ' << r.total;
    for (std::size_t a = 0; a < dims; ++a) out << ' ' << format_double(r.centroid[a]);
    out << '\n';
  }

  if (k.linear) {
    out << "linear 1\n";
    out << "coefficients " << k.linear->coefficients.size();
    for (const double c : k.linear->coefficients) out << ' ' << format_double(c);
    out << '\n';
    out << "included " << k.linear->included.size();
    for (const std::size_t i : k.linear->included) out << ' ' << i;
    out << '\n';
    out << "rank_deficient_skips " << k.linear->rank_deficient_skips << '\n';
  } else {
    out << "linear 0\n";
  }
  out << "end\n";

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write model file: " + path.string());
  file << out.str();
  if (!file) throw IoError("failed writing model file: " + path.string());
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read model file: " + path.string());
  TokenReader reader(file);

  reader.expect(kModelMagic);
  const long long version = reader.integer("version");
  if (version != kModelVersion) {
    throw IoError("unsupported model version " + std::to_string(version));
  }

  LearnerConfig cfg;
  reader.expect("config");
  reader.expect("iterations");
  cfg.iterations = static_cast<int>(reader.integer("iterations"));
  reader.expect("config");
  reader.expect("problems_per_iteration");
  cfg.problems_per_iteration = static_cast<int>(reader.integer("problems_per_iteration"));
  reader.expect("config");
  reader.expect("depth_schedule");
  const std::uint64_t schedule_len = reader.unsigned_integer("depth_schedule length");
  cfg.depth_schedule.resize(schedule_len);
  for (std::uint64_t i = 0; i < schedule_len; ++i) {
    cfg.depth_schedule[i] = static_cast<int>(reader.integer("depth_schedule entry"));
  }
  reader.expect("config");
  reader.expect("budget");
  cfg.budget.max_developed = static_cast<int>(reader.integer("budget"));
  reader.expect("config");
  reader.expect("heuristic_mode");
  cfg.heuristic_mode = heuristic_mode_from_name(reader.word("heuristic_mode"));
  reader.expect("config");
  reader.expect("z");
  cfg.estimator.z = reader.real("z");
  reader.expect("config");
  reader.expect("laplace_a");
  cfg.estimator.laplace_a = reader.real("laplace_a");
  reader.expect("config");
  reader.expect("laplace_b");
  cfg.estimator.laplace_b = reader.real("laplace_b");
  reader.expect("config");
  reader.expect("min_cell_count");
  cfg.estimator.min_cell_count = static_cast<int>(reader.integer("min_cell_count"));
  reader.expect("config");
  reader.expect("regression_tolerance");
  cfg.regression_tolerance = reader.real("regression_tolerance");
  reader.expect("config");
  reader.expect("seed");
  cfg.seed = reader.unsigned_integer("seed");

  reader.expect("iteration_index");
  const int iteration_index = static_cast<int>(reader.integer("iteration_index"));
  reader.expect("clamped");
  const std::uint64_t clamped = reader.unsigned_integer("clamped");

  reader.expect("bounds");
  const std::uint64_t dims = reader.unsigned_integer("bounds dimension");
  const Hyperrectangle bounds = read_box(reader, dims);

  reader.expect("regions");
  const std::uint64_t region_count = reader.unsigned_integer("region count");
  std::vector<Region> regions;
  regions.reserve(region_count);
  for (std::uint64_t i = 0; i < region_count; ++i) {
    reader.expect("region");
    Region r;
    r.box = read_box(reader, dims);
    r.p_hat = reader.real("p_hat");
    r.e = reader.real("e");
    r.successes = reader.unsigned_integer("successes");
    r.total = reader.unsigned_integer("total");
    r.centroid.resize(dims);
    for (std::uint64_t a = 0; a < dims; ++a) r.centroid[a] = reader.real("centroid");
    regions.push_back(std::move(r));
  }

  std::optional<LinearHeuristic> linear;
  reader.expect("linear");
  const long long has_linear = reader.integer("linear flag");
  if (has_linear == 1) {
    LinearHeuristic h;
    reader.expect("coefficients");
    const std::uint64_t n_coeffs = reader.unsigned_integer("coefficient count");
    h.coefficients.resize(n_coeffs);
    for (std::uint64_t i = 0; i < n_coeffs; ++i) {
      h.coefficients[i] = reader.real("coefficient");
    }
    reader.expect("included");
    const std::uint64_t n_included = reader.unsigned_integer("included count");
    h.included.resize(n_included);
    for (std::uint64_t i = 0; i < n_included; ++i) {
      h.included[i] = static_cast<std::size_t>(reader.unsigned_integer("included index"));
    }
    reader.expect("rank_deficient_skips");
    h.rank_deficient_skips = static_cast<int>(reader.integer("rank_deficient_skips"));
    linear = std::move(h);
  } else if (has_linear != 0) {
    throw IoError("model file: linear flag must be 0 or 1");
  }
  reader.expect("end");

  try {
    cfg.validate();
    RegionSet rs(bounds, std::move(regions), clamped);
    rs.validate();
    return LoadedModel{Knowledge{std::move(rs), std::move(linear), iteration_index}, cfg};
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("model file: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(std::string("model file: ") + e.what());
  }
}

const char* const kMetricsHeader =
    "iteration,depth,attempted,solved,solved_fraction,mean_developed,"
    "mean_success_fraction,region_count,k_count,k_min,k_mean,k_max,capped,clamped";

std::string metrics_row(const IterationMetrics& m) {
  std::ostringstream row;
  row << m.iteration << ',' << m.depth << ',' << m.attempted << ',' << m.solved
      << ',' << format_double(m.solved_fraction) << ','
      << format_double(m.mean_developed) << ','
      << format_double(m.mean_success_fraction) << ',' << m.region_count << ','
      << m.k_count << ',' << format_double(m.k_min) << ','
      << format_double(m.k_mean) << ',' << format_double(m.k_max) << ','
      << m.capped << ',' << m.clamped;
  return row.str();
}

void save_metrics(std::span<const IterationMetrics> metrics,
                  const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write metrics file: " + path.string());
  file << kMetricsHeader << '\n';
  for (const IterationMetrics& m : metrics) file << metrics_row(m) << '\n';
  if (!file) throw IoError("failed writing metrics file: " + path.string());
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

IterationMetrics parse_metrics_row(const std::vector<std::string>& f) {
  IterationMetrics m;
  m.iteration = std::stoi(f[0]);
  m.depth = std::stoi(f[1]);
  m.attempted = std::stoi(f[2]);
  m.solved = std::stoi(f[3]);
  m.solved_fraction = parse_double(f[4]);
  m.mean_developed = parse_double(f[5]);
  m.mean_success_fraction = parse_double(f[6]);
  m.region_count = static_cast<std::size_t>(std::stoull(f[7]));
  m.k_count = std::stoi(f[8]);
  m.k_min = parse_double(f[9]);
  m.k_mean = parse_double(f[10]);
  m.k_max = parse_double(f[11]);
  m.capped = std::stoi(f[12]);
  m.clamped = std::stoull(f[13]);
  return m;
}

}  // namespace

std::vector<IterationMetrics> load_metrics(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read metrics file: " + path.string());
  std::string line;
  if (!std::getline(file, line) || line != kMetricsHeader) {
    throw IoError("metrics file: unrecognized header");
  }
  std::vector<IterationMetrics> metrics;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 14) throw IoError("metrics file: bad column count");
    try {
      metrics.push_back(parse_metrics_row(f));
    } catch (const std::exception& e) {
      throw IoError("metrics file: " + std::string(e.what()));
    }
  }
  return metrics;
}

void save_problems(std::span<const ProblemInstance> problems,
                   const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write problems file: " + path.string());
  for (const ProblemInstance& p : problems) file << to_line(p) << '\n';
  if (!file) throw IoError("failed writing problems file: " + path.string());
}

std::vector<ProblemInstance> load_problems(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read problems file: " + path.string());
  std::vector<ProblemInstance> problems;
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    try {
      problems.push_back(instance_from_line(line));
    } catch (const std::invalid_argument& e) {
      throw IoError("problems file: " + std::string(e.what()));
    }
  }
  return problems;
}

}  // namespace probe
