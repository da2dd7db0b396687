#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/corpus/fixture.hpp>
#include <w2vrec/embedding/io.hpp>
#include <w2vrec/embedding/trainer.hpp>
#include <w2vrec/eval/metrics.hpp>
#include <w2vrec/eval/report.hpp>
#include <w2vrec/harness/config.hpp>
#include <w2vrec/harness/experiment.hpp>
#include <w2vrec/harness/sweep.hpp>
#include <w2vrec/recommend/batch_io.hpp>
#include <w2vrec/recommend/recommenders.hpp>

#include <CLI11.hpp>
#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace w2vrec;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kValueKeys = {
    "checkins", "train", "test", "boundary", "delimiter", "columns", "min-count",
    "fixture-seed", "communities", "users-per-community", "venues-per-community", "train-per-user",
    "test-per-user", "noise", "favorites", "favorite-rate", "method", "arch", "features", "window",
    "epochs", "negative", "lr", "min-lr", "train-seed", "workers", "neighbors", "topk", "mf-rank",
    "lambda", "ccd-iterations", "random-runs", "seed", "output"};

const std::vector<std::string> kFlagKeys = {"fixture", "filter-seen", "binary", "kiu-weighted", "random-ties"};

// Config file first, then every flag given on the command line.
struct ConfigOptions {
  std::string config_file;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key=value config file; flags override it");
    for (const auto& key : kValueKeys) app->add_option("--" + key, values[key]);
    for (const auto& key : kFlagKeys) {
      app->add_option("--" + key, values[key])->expected(0, 1)->default_str("true");
    }
  }

  harness::ExperimentConfig resolve(const CLI::App* app) const {
    harness::ExperimentConfig c;
    if (!config_file.empty()) harness::apply_config_file(c, config_file);
    for (const auto& [key, value] : values) {
      const auto* opt = app->get_option("--" + key);
      if (opt->count() == 0) continue;
      apply_setting(c, key, value.empty() ? "true" : value);
    }
    return c;
  }
};

void print_report(const eval::MetricsReport& r) {
  eval::write_report_csv(std::cout, {r});
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

bool ends_with_gz(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

int generate_fixture(const harness::ExperimentConfig& c, const std::string& path) {
  corpus::FixtureSpec spec = c.fixture.value_or(corpus::FixtureSpec{});
  const auto fx = corpus::generate_fixture(spec);
  std::ostringstream text;
  corpus::write_checkins(text, fx.records);
  if (ends_with_gz(path)) {
    gzFile gz = gzopen(path.c_str(), "wb");
    if (gz == nullptr) throw IoError("cannot write " + path);
    const auto s = text.str();
    const int written = gzwrite(gz, s.data(), static_cast<unsigned>(s.size()));
    gzclose(gz);
    if (written != static_cast<int>(s.size())) throw IoError("short gzip write: " + path);
  } else {
    write_text(path, text.str());
  }
  std::cerr << "wrote " << fx.records.size() << " check-ins (" << fx.train_count << " train, " << fx.test_count
            << " test), boundary " << fx.boundary << '\n';
  return 0;
}

fs::path require_output(const harness::ExperimentConfig& c) {
  if (c.output_dir.empty()) throw ConfigError("--output is required");
  fs::create_directories(c.output_dir);
  return c.output_dir;
}

int train_model(harness::ExperimentConfig c) {
  c.validate();
  const auto dir = require_output(c);
  const auto ds = harness::load_dataset(c);
  const auto vocab = corpus::build_vocabulary(ds.train, c.min_word_count);
  const auto sentences = corpus::build_sentences(ds.train, vocab);
  const auto training = c.resolved_training();
  auto model = embedding::init_model<float>(vocab, training);
  const auto loss = embedding::train(model, sentences.sentences);
  embedding::save_model((dir / "model.bin").string(), model);
  std::ofstream csv(dir / "loss.csv");
  embedding::write_loss_csv(csv, loss);
  std::cerr << "trained " << vocab.size() << " tokens in " << loss.seconds << " s\n";
  return 0;
}

int recommend_users(harness::ExperimentConfig c, const std::string& model_path, const std::string& users_path) {
  c.validate();
  if (!uses_embedding(c.method)) throw ConfigError("recommend takes KNI, NN or KIU; use run for baselines");
  const auto dir = require_output(c);
  const auto ds = harness::load_dataset(c);
  const auto model = embedding::load_model(model_path);
  const auto sentences = corpus::build_sentences(ds.train, model.vocab());
  const recommend::EmbeddingRecommender<float> recommender(
      model, recommend::Interactions::from_sentences(sentences.sentences, c.binary_votes));

  std::vector<std::string> users;
  if (!users_path.empty()) {
    std::ifstream in(users_path);
    if (!in) throw IoError("cannot open user list: " + users_path);
    users = recommend::read_user_list(in);
  } else {
    for (const auto& [user, relevant] : eval::build_ground_truth(ds)) users.push_back(user);
  }
  std::vector<RecommendationList> lists;
  for (std::size_t i = 0; i < users.size(); ++i) {
    recommend::RecommendationRequest req;
    req.user = users[i];
    req.k = c.k;
    req.neighbors = c.neighbors;
    req.filter_seen = c.filter_seen;
    req.randomized_ties = c.randomized_ties;
    req.seed = Rng::derive(c.seed, i);
    req.weighted_kiu = c.weighted_kiu;
    lists.push_back(recommender.recommend(c.method, req));
  }
  std::ofstream out(dir / "recommendations.tsv");
  recommend::write_recommendations(out, lists);
  return 0;
}

int evaluate(harness::ExperimentConfig c, const std::string& recs_path) {
  c.validate();
  const auto ds = harness::load_dataset(c);
  std::ifstream in(recs_path);
  if (!in) throw IoError("cannot open recommendations: " + recs_path);
  const auto lists = recommend::read_recommendations(in);
  const auto gt = eval::build_ground_truth(ds);
  if (gt.empty()) throw EvaluationError("no user has both train and test check-ins");
  const auto training = c.resolved_training();
  eval::RunEcho echo{std::string(to_string(c.method)),
                     uses_embedding(c.method) ? std::string(embedding::to_string(training.architecture)) : "none",
                     training.features, training.window, training.epochs, c.neighbors, c.k};
  const auto report = eval::aggregate(eval::score_users(gt, lists, c.k), {}, echo);
  if (!c.output_dir.empty()) {
    const auto dir = require_output(c);
    std::ofstream users(dir / "per_user.csv");
    eval::write_user_csv(users, report.users);
    std::ofstream csv(dir / "report.csv");
    eval::write_report_csv(csv, {report});
    std::ofstream json(dir / "report.json");
    json << eval::report_json(report).dump(2) << '\n';
  }
  print_report(report);
  return 0;
}

std::vector<std::size_t> parse_values(const std::string& list) {
  std::vector<std::size_t> values;
  std::stringstream ss(list);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    std::size_t used = 0;
    std::size_t v = 0;
    try {
      v = std::stoul(cell, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != cell.size()) throw ConfigError("bad sweep value: " + cell);
    values.push_back(v);
  }
  return values;
}

int sweep(const harness::ExperimentConfig& c, const std::string& axis, const std::string& values) {
  harness::SweepSpec spec{harness::parse_axis(axis), parse_values(values)};
  const auto result = harness::run_sweep(spec, c);
  std::vector<eval::MetricsReport> reports;
  for (const auto& p : result.points) reports.push_back(p.report);
  if (!reports.empty()) eval::write_report_csv(std::cout, reports);
  for (const auto& f : result.failures) {
    std::cerr << "run " << axis << "=" << f.value << " failed: " << f.message << '\n';
  }
  return result.points.empty() ? 2 : 0;
}

int plot_data(const std::string& input, const std::string& axis, const std::string& output) {
  const auto parsed_axis = harness::parse_axis(axis);
  std::ifstream in(input);
  if (!in) throw IoError("cannot open " + input);
  const auto files = harness::emit_plot_data(harness::read_sweep_csv(in, parsed_axis));
  for (const auto& [name, text] : files) {
    write_text(fs::path(output) / name, text);
    std::cerr << "wrote " << (fs::path(output) / name).string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Venue recommendation from check-in embeddings"};
  app.require_subcommand(1);

  ConfigOptions opts;
  std::string path;
  std::string model_path;
  std::string users_path;
  std::string recs_path;
  std::string axis = "F";
  std::string values;
  std::string plot_input;
  std::string plot_output = ".";

  auto* gen = app.add_subcommand("generate-fixture", "write a synthetic check-in file");
  opts.attach(gen);
  gen->add_option("--file", path, "destination; a .gz suffix compresses")->required();

  auto* tr = app.add_subcommand("train", "train embeddings into <output>/model.bin");
  opts.attach(tr);

  auto* rec = app.add_subcommand("recommend", "write <output>/recommendations.tsv from a trained model");
  opts.attach(rec);
  rec->add_option("--model", model_path)->required();
  rec->add_option("--users", users_path, "one user id per line; default: every evaluated user");

  auto* ev = app.add_subcommand("evaluate", "score a recommendations file against the test split");
  opts.attach(ev);
  ev->add_option("--recommendations", recs_path)->required();

  auto* run = app.add_subcommand("run", "corpus, model, recommend and evaluate in one go");
  opts.attach(run);

  auto* sw = app.add_subcommand("sweep", "one run per value of a parameter");
  opts.attach(sw);
  sw->add_option("--axis", axis, "F, C or E");
  sw->add_option("--values", values, "comma-separated; default grid when omitted");

  auto* plot = app.add_subcommand("plot-data", "tidy CSVs from a combined sweep CSV");
  plot->add_option("--input", plot_input)->required();
  plot->add_option("--axis", axis, "F, C or E");
  plot->add_option("--dir", plot_output, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) return generate_fixture(opts.resolve(gen), path);
    if (*tr) return train_model(opts.resolve(tr));
    if (*rec) return recommend_users(opts.resolve(rec), model_path, users_path);
    if (*ev) return evaluate(opts.resolve(ev), recs_path);
    if (*run) {
      const auto result = harness::run_experiment(opts.resolve(run));
      print_report(result.report);
      return 0;
    }
    if (*sw) return sweep(opts.resolve(sw), axis, values);
    if (*plot) return plot_data(plot_input, axis, plot_output);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
