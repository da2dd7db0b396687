#pragma once

#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/corpus/fixture.hpp>
#include <w2vrec/embedding/config.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/recommend/list.hpp>

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace w2vrec::harness {

struct ExperimentConfig {
  // Data: a fixture spec, one check-in file split at `boundary`, or
  // separate train and test files.
  std::optional<corpus::FixtureSpec> fixture;
  std::string checkins_path;
  std::string train_path;
  std::string test_path;
  std::int64_t boundary = corpus::kFeb2011;
  corpus::FieldLayout layout;
  std::uint64_t min_word_count = 1;

  Method method = Method::KNI;
  embedding::TrainingConfig training;
  bool window_set = false;  // otherwise C=20 for skip-gram, "max" for CBOW

  std::size_t neighbors = 30;  // N
  std::size_t k = 10;
  bool filter_seen = false;
  bool binary_votes = false;      // NN votes / baseline matrix entries
  bool weighted_kiu = false;
  bool randomized_ties = false;

  std::size_t mf_rank = 0;  // 0: same as F
  double lambda = 0.1;
  std::size_t ccd_iterations = 15;
  std::size_t random_runs = 10;

  std::uint64_t seed = 1;  // recommendation-side randomness
  std::string output_dir;

  ExperimentConfig() { training.features = 100; training.epochs = 25; training.window = 20; }

  std::size_t effective_mf_rank() const { return mf_rank == 0 ? training.features : mf_rank; }

  // Training config with the architecture-dependent window default applied.
  embedding::TrainingConfig resolved_training() const {
    auto t = training;
    if (!window_set) {
      t.window_max = t.architecture == embedding::Architecture::Cbow;
      t.window = 20;
    }
    return t;
  }

  void validate() const {
    const int sources = (fixture ? 1 : 0) + (checkins_path.empty() ? 0 : 1) +
                        (train_path.empty() && test_path.empty() ? 0 : 1);
    if (sources != 1) {
      throw ConfigError("exactly one data source is required: fixture, checkins, or train+test");
    }
    if (!train_path.empty() && test_path.empty()) throw ConfigError("train file given without test file");
    if (train_path.empty() && !test_path.empty()) throw ConfigError("test file given without train file");
    if (fixture) fixture->validate();
    if (min_word_count < 1) throw ConfigError("min-count must be >= 1");
    if (k < 1) throw ConfigError("topk must be >= 1");
    if (neighbors < 1) throw ConfigError("neighbors must be >= 1");
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (ccd_iterations < 1) throw ConfigError("ccd-iterations must be >= 1");
    if (random_runs < 1) throw ConfigError("random-runs must be >= 1");
    resolved_training().validate();
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw ConfigError("invalid value for " + key + ": '" + value + "'");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + value + "'");
}

inline char parse_delimiter(const std::string& value) {
  if (value == "tab" || value == "\\t") return '\t';
  if (value == "comma") return ',';
  if (value == "space") return ' ';
  if (value.size() == 1) return value[0];
  throw ConfigError("delimiter must be a single character, tab, comma or space");
}

inline corpus::FixtureSpec& fixture_of(ExperimentConfig& c) {
  if (!c.fixture) c.fixture.emplace();
  return *c.fixture;
}

}  // namespace detail

// Applies one key=value setting. Keys match the CLI flag names.
inline void apply_setting(ExperimentConfig& c, const std::string& raw_key, const std::string& raw_value) {
  using detail::parse_bool;
  using detail::parse_number;
  const auto key = detail::trim(raw_key);
  const auto value = detail::trim(raw_value);
  auto size = [&] { return parse_number<std::size_t>(key, value); };
  auto real = [&] { return parse_number<double>(key, value); };

  if (key == "checkins") c.checkins_path = value;
  else if (key == "train") c.train_path = value;
  else if (key == "test") c.test_path = value;
  else if (key == "boundary") c.boundary = parse_number<std::int64_t>(key, value);
  else if (key == "delimiter") c.layout.delimiter = detail::parse_delimiter(value);
  else if (key == "columns") c.layout = corpus::FieldLayout::from_order(value, c.layout.delimiter);
  else if (key == "min-count") c.min_word_count = parse_number<std::uint64_t>(key, value);
  else if (key == "fixture") {
    if (parse_bool(key, value)) detail::fixture_of(c);
    else c.fixture.reset();
  }
  else if (key == "fixture-seed") detail::fixture_of(c).seed = parse_number<std::uint64_t>(key, value);
  else if (key == "communities") detail::fixture_of(c).communities = size();
  else if (key == "users-per-community") detail::fixture_of(c).users_per_community = size();
  else if (key == "venues-per-community") detail::fixture_of(c).venues_per_community = size();
  else if (key == "train-per-user") detail::fixture_of(c).train_per_user = size();
  else if (key == "test-per-user") detail::fixture_of(c).test_per_user = size();
  else if (key == "noise") detail::fixture_of(c).noise = real();
  else if (key == "favorites") detail::fixture_of(c).favorites_per_user = size();
  else if (key == "favorite-rate") detail::fixture_of(c).favorite_rate = real();
  else if (key == "method") c.method = parse_method(value);
  else if (key == "arch") c.training.architecture = embedding::parse_architecture(value);
  else if (key == "features") c.training.features = size();
  else if (key == "window") {
    c.window_set = true;
    if (value == "max") {
      c.training.window_max = true;
    } else {
      c.training.window_max = false;
      c.training.window = size();
    }
  }
  else if (key == "epochs") c.training.epochs = size();
  else if (key == "negative") c.training.negative = size();
  else if (key == "lr") c.training.initial_learning_rate = real();
  else if (key == "min-lr") c.training.min_learning_rate = real();
  else if (key == "train-seed") c.training.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "workers") c.training.workers = size();
  else if (key == "neighbors") c.neighbors = size();
  else if (key == "topk") c.k = size();
  else if (key == "filter-seen") c.filter_seen = parse_bool(key, value);
  else if (key == "binary") c.binary_votes = parse_bool(key, value);
  else if (key == "kiu-weighted") c.weighted_kiu = parse_bool(key, value);
  else if (key == "random-ties") c.randomized_ties = parse_bool(key, value);
  else if (key == "mf-rank") c.mf_rank = size();
  else if (key == "lambda") c.lambda = real();
  else if (key == "ccd-iterations") c.ccd_iterations = size();
  else if (key == "random-runs") c.random_runs = size();
  else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
    c.training.seed = c.seed;
  }
  else if (key == "output") c.output_dir = value;
  else throw ConfigError("unknown setting: " + key);
}

// Flat "key = value" lines; '#' starts a comment.
inline void apply_config_stream(ExperimentConfig& c, std::istream& in) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + " is not key=value");
    }
    apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

inline void apply_config_file(ExperimentConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  apply_config_stream(c, in);
}

}  // namespace w2vrec::harness
