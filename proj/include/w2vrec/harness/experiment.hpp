#pragma once

#include <w2vrec/baselines/ccdpp.hpp>
#include <w2vrec/baselines/cf.hpp>
#include <w2vrec/baselines/latent.hpp>
#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/baselines/random.hpp>
#include <w2vrec/baselines/svd.hpp>
#include <w2vrec/corpus/dataset.hpp>
#include <w2vrec/corpus/fixture.hpp>
#include <w2vrec/corpus/sentences.hpp>
#include <w2vrec/corpus/vocabulary.hpp>
#include <w2vrec/embedding/io.hpp>
#include <w2vrec/embedding/trainer.hpp>
#include <w2vrec/eval/metrics.hpp>
#include <w2vrec/eval/report.hpp>
#include <w2vrec/harness/config.hpp>
#include <w2vrec/recommend/batch_io.hpp>
#include <w2vrec/recommend/recommenders.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace w2vrec::harness {

namespace fs = std::filesystem;

inline corpus::Dataset load_dataset(const ExperimentConfig& config) {
  if (config.fixture) {
    const auto fx = corpus::generate_fixture(*config.fixture);
    return corpus::split_train_test(fx.records, fx.boundary);
  }
  if (!config.checkins_path.empty()) {
    const auto parsed = corpus::read_checkins(config.checkins_path, config.layout);
    return corpus::split_train_test(parsed.records, config.boundary);
  }
  corpus::Dataset ds;
  ds.train = corpus::read_checkins(config.train_path, config.layout).records;
  ds.test = corpus::read_checkins(config.test_path, config.layout).records;
  return ds;
}

// Guards every model-building step: throws if a record about to be used
// for vocabulary, sentence, matrix or factor construction is a test record.
class LeakGuard {
 public:
  explicit LeakGuard(const corpus::Dataset& ds) {
    for (const auto& r : ds.test) test_.insert(key(r));
  }

  void check(const std::vector<corpus::CheckinRecord>& records, const char* stage) {
    ++checks_;
    for (const auto& r : records) {
      if (test_.contains(key(r))) {
        throw Error(std::string("test record reached ") + stage + ": " + r.user + " " + r.venue);
      }
    }
  }

  std::size_t checks() const { return checks_; }

 private:
  static std::string key(const corpus::CheckinRecord& r) {
    return r.user + '\x1f' + r.venue + '\x1f' + std::to_string(r.timestamp);
  }
  std::unordered_set<std::string> test_;
  std::size_t checks_ = 0;
};

struct ExperimentResult {
  eval::MetricsReport report;
  std::vector<RecommendationList> recommendations;  // last run for Random
  embedding::LossTrace loss;                        // embedding methods
  std::vector<double> objective;                    // CCD++
  std::size_t leak_checks = 0;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Streams per-user rows to per_user.csv as they are scored so a failing run
// leaves a partial file behind.
class UserSink {
 public:
  explicit UserSink(const std::string& dir) {
    if (dir.empty()) return;
    out_.open(fs::path(dir) / "per_user.csv");
    if (!out_) throw IoError("cannot write per_user.csv in " + dir);
    out_ << "user,precision,ndcg,hit,predicted\n";
  }
  void add(const eval::UserMetrics& r) {
    if (!out_.is_open()) return;
    out_ << r.user << ',' << eval::format_number(r.precision) << ',' << eval::format_number(r.ndcg) << ','
         << r.hit << ',' << r.predicted << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

}  // namespace detail

// corpus -> model (embedding / factorization / none) -> recommend for every
// evaluated user -> metrics. Train and recommend phases are timed
// separately.
inline ExperimentResult run_experiment(const ExperimentConfig& config, const corpus::Dataset& ds) {
  config.validate();
  const auto gt = eval::build_ground_truth(ds);
  if (gt.empty()) throw EvaluationError("no user has both train and test check-ins");
  if (!config.output_dir.empty()) fs::create_directories(config.output_dir);

  ExperimentResult result;
  LeakGuard guard(ds);
  const auto training = config.resolved_training();
  eval::RunEcho echo{std::string(to_string(config.method)),
                     uses_embedding(config.method) ? std::string(embedding::to_string(training.architecture))
                                                   : std::string("none"),
                     training.features, training.window, training.epochs, config.neighbors, config.k};
  if (config.method == Method::SVD || config.method == Method::CCDPP) {
    echo.features = config.effective_mf_rank();
  }

  detail::UserSink sink(config.output_dir);
  std::vector<eval::UserMetrics> rows;
  eval::Timings timings;

  auto recommend_all = [&](const std::function<RecommendationList(const std::string&, std::size_t)>& rec,
                           bool record) {
    std::vector<eval::UserMetrics> out;
    result.recommendations.clear();
    const auto start = std::chrono::steady_clock::now();
    std::size_t index = 0;
    for (const auto& [user, relevant] : gt) {
      auto list = rec(user, index++);
      auto row = eval::score_user(user, &list, relevant, config.k);
      if (record) sink.add(row);
      out.push_back(row);
      result.recommendations.push_back(std::move(list));
    }
    timings.recommend_seconds += detail::seconds_since(start);
    return out;
  };

  if (uses_embedding(config.method)) {
    const auto start = std::chrono::steady_clock::now();
    guard.check(ds.train, "vocabulary construction");
    const auto vocab = corpus::build_vocabulary(ds.train, config.min_word_count);
    guard.check(ds.train, "sentence construction");
    const auto sentences = corpus::build_sentences(ds.train, vocab);
    auto model = embedding::init_model<float>(vocab, training);
    result.loss = embedding::train(model, sentences.sentences);
    timings.train_seconds = detail::seconds_since(start);
    echo.window = result.loss.window;

    const recommend::EmbeddingRecommender<float> recommender(
        model, recommend::Interactions::from_sentences(sentences.sentences, config.binary_votes));
    rows = recommend_all(
        [&](const std::string& user, std::size_t index) {
          recommend::RecommendationRequest req;
          req.user = user;
          req.k = config.k;
          req.neighbors = config.neighbors;
          req.filter_seen = config.filter_seen;
          req.randomized_ties = config.randomized_ties;
          req.seed = Rng::derive(config.seed, index);
          req.weighted_kiu = config.weighted_kiu;
          return recommender.recommend(config.method, req);
        },
        true);
    if (!config.output_dir.empty()) {
      embedding::save_model((fs::path(config.output_dir) / "model.bin").string(), model);
      std::ofstream loss(fs::path(config.output_dir) / "loss.csv");
      embedding::write_loss_csv(loss, result.loss);
    }
  } else {
    auto start = std::chrono::steady_clock::now();
    guard.check(ds.train, "matrix construction");
    const auto matrix = baselines::InteractionMatrix::from_records(ds.train, config.binary_votes);
    if (matrix.rows() == 0) throw EvaluationError("empty training matrix");

    switch (config.method) {
      case Method::CF: {
        timings.train_seconds = detail::seconds_since(start);
        baselines::CfOptions opts{config.neighbors, config.k, config.filter_seen};
        rows = recommend_all([&](const std::string& user, std::size_t) { return baselines::recommend_cf(matrix, user, opts); },
                             true);
        break;
      }
      case Method::Random: {
        timings.train_seconds = detail::seconds_since(start);
        // Aggregates are averaged over random_runs seeded runs; per-user
        // rows come from the first run.
        std::vector<eval::MetricsReport> runs;
        for (std::size_t run = 0; run < config.random_runs; ++run) {
          const auto run_seed = Rng::derive(config.seed, 1000 + run);
          auto run_rows = recommend_all(
              [&](const std::string& user, std::size_t index) {
                return baselines::recommend_random(matrix.venue_ids(), config.k, Rng::derive(run_seed, index), user);
              },
              run == 0);
          if (run == 0) rows = run_rows;
          runs.push_back(eval::aggregate(std::move(run_rows), {}, echo));
        }
        auto report = eval::aggregate(rows, timings, echo);
        report.precision = report.ndcg = report.hitrate = report.coverage = 0.0;
        for (const auto& r : runs) {
          report.precision += r.precision;
          report.ndcg += r.ndcg;
          report.hitrate += r.hitrate;
          report.coverage += r.coverage;
        }
        const auto n = static_cast<double>(runs.size());
        report.precision /= n;
        report.ndcg /= n;
        report.hitrate /= n;
        report.coverage /= n;
        report.recommend_seconds_total = timings.recommend_seconds;
        report.recommend_seconds_per_user = timings.recommend_seconds / (n * static_cast<double>(gt.size()));
        result.report = std::move(report);
        break;
      }
      case Method::SVD:
      case Method::CCDPP: {
        guard.check(ds.train, "factorization");
        baselines::FactorModel factors;
        const auto rank = std::min(config.effective_mf_rank(), std::min(matrix.rows(), matrix.cols()));
        if (config.method == Method::SVD) {
          baselines::SvdOptions opts;
          opts.seed = config.seed;
          factors = baselines::svd_factorize(matrix, rank, opts);
        } else {
          baselines::CcdOptions opts;
          opts.rank = rank;
          opts.lambda = config.lambda;
          opts.iterations = config.ccd_iterations;
          opts.seed = config.seed;
          auto fit = baselines::ccdpp_factorize(matrix, opts);
          result.objective = fit.objective;
          factors = std::move(fit.model);
        }
        timings.train_seconds = detail::seconds_since(start);
        baselines::LatentOptions opts;
        opts.neighbors = config.neighbors;
        opts.k = config.k;
        opts.filter_seen = config.filter_seen;
        opts.ties.randomized = config.randomized_ties;
        opts.ties.seed = config.seed;
        rows = recommend_all(
            [&](const std::string& user, std::size_t) {
              return baselines::recommend_latent_neighbors(factors, matrix, user, opts, config.method);
            },
            true);
        if (!config.output_dir.empty()) {
          baselines::save_factor_model((fs::path(config.output_dir) / "factors.bin").string(), factors);
        }
        break;
      }
      default: throw ConfigError("unsupported method");
    }
  }

  if (config.method != Method::Random) result.report = eval::aggregate(rows, timings, echo);
  result.leak_checks = guard.checks();

  if (!config.output_dir.empty()) {
    const fs::path dir(config.output_dir);
    {
      std::ofstream csv(dir / "report.csv");
      eval::write_report_csv(csv, {result.report});
    }
    {
      std::ofstream json(dir / "report.json");
      json << eval::report_json(result.report).dump(2) << '\n';
    }
    {
      std::ofstream recs(dir / "recommendations.tsv");
      recommend::write_recommendations(recs, result.recommendations);
    }
  }
  return result;
}

// Loads the configured data, then runs. On failure with an output
// directory, an ERROR marker file holds the message.
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  try {
    return run_experiment(config, load_dataset(config));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    if (!config.output_dir.empty()) {
      fs::create_directories(config.output_dir);
      std::ofstream marker(fs::path(config.output_dir) / "ERROR");
      marker << e.what() << '\n';
    }
    throw;
  }
}

}  // namespace w2vrec::harness
