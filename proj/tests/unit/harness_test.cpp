#include "recompute.hpp"
#include "toy.hpp"

#include <w2vrec/harness/config.hpp>
#include <w2vrec/harness/experiment.hpp>
#include <w2vrec/harness/sweep.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace w2vrec;
using namespace w2vrec::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("w2vrec_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Two communities, small enough for many runs.
ExperimentConfig two_communities() {
  ExperimentConfig c;
  corpus::FixtureSpec spec;
  spec.seed = 5;
  spec.communities = 2;
  spec.users_per_community = 20;
  spec.venues_per_community = 30;
  spec.train_per_user = 15;
  spec.test_per_user = 5;
  spec.favorites_per_user = 5;
  spec.favorite_rate = 1.0;
  c.fixture = spec;
  c.training.features = 16;
  c.training.epochs = 10;
  c.training.workers = 1;
  c.window_set = true;
  c.training.window = 10;
  c.training.seed = 3;
  return c;
}

// Drops the three timing columns from every line of a report CSV.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    for (int i = 0; i < 3; ++i) line.erase(line.rfind(','));
    out += line + '\n';
  }
  return out;
}

}  // namespace

TEST(Config, Defaults) {
  ExperimentConfig c;
  EXPECT_EQ(c.neighbors, 30u);
  EXPECT_EQ(c.k, 10u);
  EXPECT_EQ(c.training.features, 100u);
  EXPECT_EQ(c.training.epochs, 25u);
  EXPECT_EQ(c.resolved_training().window, 20u);
  EXPECT_FALSE(c.resolved_training().window_max);
  c.training.architecture = embedding::Architecture::Cbow;
  EXPECT_TRUE(c.resolved_training().window_max);
}

TEST(Config, FileThenFlagOverride) {
  ExperimentConfig c;
  std::istringstream file(
      "# sweep template\n"
      "method = kiu\n"
      "features=40   # comment\n"
      "\n"
      "window = max\n"
      "topk = 5\n"
      "filter-seen = true\n");
  apply_config_stream(c, file);
  EXPECT_EQ(c.method, Method::KIU);
  EXPECT_EQ(c.training.features, 40u);
  EXPECT_TRUE(c.training.window_max);
  EXPECT_EQ(c.k, 5u);
  EXPECT_TRUE(c.filter_seen);

  apply_setting(c, "features", "70");
  apply_setting(c, "window", "7");
  EXPECT_EQ(c.training.features, 70u);
  EXPECT_FALSE(c.training.window_max);
  EXPECT_EQ(c.resolved_training().window, 7u);
}

TEST(Config, BadInputsAreConfigErrors) {
  ExperimentConfig c;
  EXPECT_THROW(apply_setting(c, "colour", "blue"), ConfigError);
  EXPECT_THROW(apply_setting(c, "features", "ten"), ConfigError);
  EXPECT_THROW(apply_setting(c, "method", "magic"), std::exception);
  std::istringstream bad("features 10\n");
  EXPECT_THROW(apply_config_stream(c, bad), ConfigError);
  EXPECT_THROW(apply_config_file(c, "/nonexistent/w2vrec.conf"), ConfigError);
}

TEST(Config, ValidationNeedsOneDataSource) {
  ExperimentConfig c;
  EXPECT_THROW(c.validate(), ConfigError);
  c.checkins_path = "a.tsv";
  EXPECT_NO_THROW(c.validate());
  c.fixture = corpus::FixtureSpec{};
  EXPECT_THROW(c.validate(), ConfigError);
  c.fixture.reset();
  c.checkins_path.clear();
  c.train_path = "train.tsv";
  EXPECT_THROW(c.validate(), ConfigError);
  c.test_path = "test.tsv";
  EXPECT_NO_THROW(c.validate());
}

TEST(RunExperiment, ConfigErrorBeforeAnyWork) {
  auto c = two_communities();
  const auto dir = scratch("config_error");
  c.output_dir = dir.string();
  c.k = 0;
  EXPECT_THROW(run_experiment(c), ConfigError);
  EXPECT_FALSE(fs::exists(dir));

  c = two_communities();
  c.output_dir = dir.string();
  c.training.features = 0;
  EXPECT_THROW(run_experiment(c), ConfigError);
  EXPECT_FALSE(fs::exists(dir));
}

TEST(RunExperiment, KniOnTwoCommunitiesCoversEveryUser) {
  auto c = two_communities();
  const auto dir = scratch("kni");
  c.output_dir = dir.string();
  const auto result = run_experiment(c);
  EXPECT_EQ(result.report.coverage, 1.0);
  EXPECT_EQ(result.report.users.size(), 40u);
  auto random = two_communities();
  random.method = Method::Random;
  EXPECT_GT(result.report.precision, run_experiment(random).report.precision);
  EXPECT_GE(result.leak_checks, 2u);
  EXPECT_EQ(result.loss.epochs.size(), 10u);
  for (const char* f : {"per_user.csv", "report.csv", "report.json", "recommendations.tsv", "model.bin", "loss.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_FALSE(fs::exists(dir / "ERROR"));
  EXPECT_GE(result.report.train_seconds, 0.0);
  EXPECT_GE(result.report.recommend_seconds_total, 0.0);
}

TEST(RunExperiment, EveryMethodRuns) {
  for (auto m : kAllMethods) {
    auto c = two_communities();
    c.method = m;
    c.random_runs = 3;
    c.ccd_iterations = 5;
    const auto r = run_experiment(c);
    EXPECT_EQ(r.report.echo.method, std::string(to_string(m)));
    EXPECT_GE(r.report.precision, 0.0);
    EXPECT_LE(r.report.precision, 1.0);
    EXPECT_GE(r.leak_checks, 1u);
    if (m == Method::Random || uses_embedding(m)) EXPECT_EQ(r.report.coverage, 1.0) << to_string(m);
    if (m == Method::CCDPP) EXPECT_EQ(r.objective.size(), 5u);
  }
}

TEST(RunExperiment, RandomCoversEveryUser) {
  auto c = two_communities();
  c.method = Method::Random;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.report.coverage, 1.0);
}

TEST(RunExperiment, PerUserCsvMatchesAggregate) {
  auto c = two_communities();
  const auto dir = scratch("recompute");
  c.output_dir = dir.string();
  const auto r = run_experiment(c);
  std::ifstream csv(dir / "per_user.csv");
  const auto again = oracle::recompute_from_user_csv(csv);
  EXPECT_EQ(again.users, r.report.users.size());
  EXPECT_NEAR(again.precision, r.report.precision, 1e-12);
  EXPECT_NEAR(again.ndcg, r.report.ndcg, 1e-12);
  EXPECT_NEAR(again.hitrate, r.report.hitrate, 1e-12);
  EXPECT_NEAR(again.coverage, r.report.coverage, 1e-12);
}

TEST(RunExperiment, ReproducibleSingleWorker) {
  auto c = two_communities();
  const auto a = scratch("repro_a");
  const auto b = scratch("repro_b");
  c.output_dir = a.string();
  const auto ra = run_experiment(c);
  c.output_dir = b.string();
  const auto rb = run_experiment(c);
  EXPECT_EQ(slurp(a / "per_user.csv"), slurp(b / "per_user.csv"));
  EXPECT_EQ(slurp(a / "recommendations.tsv"), slurp(b / "recommendations.tsv"));
  EXPECT_EQ(slurp(a / "model.bin"), slurp(b / "model.bin"));
  EXPECT_EQ(without_timing(slurp(a / "report.csv")), without_timing(slurp(b / "report.csv")));
  EXPECT_EQ(ra.report.precision, rb.report.precision);
  EXPECT_EQ(ra.report.ndcg, rb.report.ndcg);
}

TEST(RunExperiment, MissingInputLeavesErrorMarker) {
  ExperimentConfig c;
  const auto dir = scratch("missing");
  c.checkins_path = (dir / "nope.tsv").string();
  c.output_dir = dir.string();
  EXPECT_THROW(run_experiment(c), IoError);
  ASSERT_TRUE(fs::exists(dir / "ERROR"));
  EXPECT_NE(slurp(dir / "ERROR").find("nope.tsv"), std::string::npos);
}

TEST(RunExperiment, MidRunFailureKeepsPartialOutput) {
  auto c = two_communities();
  const auto dir = scratch("midrun");
  fs::create_directories(dir / "model.bin");  // blocks the model write
  c.output_dir = dir.string();
  EXPECT_THROW(run_experiment(c), IoError);
  ASSERT_TRUE(fs::exists(dir / "ERROR"));
  ASSERT_TRUE(fs::exists(dir / "per_user.csv"));
  std::ifstream csv(dir / "per_user.csv");
  EXPECT_EQ(oracle::recompute_from_user_csv(csv).users, 40u);
}

TEST(LeakGuard, ThrowsOnTestRecord) {
  corpus::Dataset ds;
  ds.train = {{"u", "a", 1}, {"u", "b", 2}};
  ds.test = {{"u", "c", 3}};
  LeakGuard guard(ds);
  EXPECT_NO_THROW(guard.check(ds.train, "vocabulary construction"));
  auto leaked = ds.train;
  leaked.push_back(ds.test.front());
  EXPECT_THROW(guard.check(leaked, "matrix construction"), Error);
  EXPECT_EQ(guard.checks(), 2u);
  // Same user and venue at a train timestamp is not a leak.
  EXPECT_NO_THROW(guard.check({{"u", "c", 1}}, "sentence construction"));
}

TEST(Sweep, TenFeatureValuesGiveTenRows) {
  auto c = two_communities();
  c.training.epochs = 3;
  const auto dir = scratch("sweep_f");
  c.output_dir = dir.string();
  const auto result = run_sweep({Axis::F, {}}, c);
  ASSERT_EQ(result.points.size(), 10u);
  EXPECT_TRUE(result.failures.empty());
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(result.points[i].value, 10 * (i + 1));
    EXPECT_EQ(result.points[i].report.echo.features, 10 * (i + 1));
    EXPECT_TRUE(fs::exists(dir / ("F=" + std::to_string(10 * (i + 1))) / "per_user.csv"));
  }
  std::ifstream combined(dir / "combined.csv");
  const auto rows = read_sweep_csv(combined, Axis::F);
  EXPECT_EQ(rows.size(), 10u);
}

TEST(Sweep, DefaultGrids) {
  EXPECT_EQ(default_grid(Axis::F).size(), 10u);
  EXPECT_EQ(default_grid(Axis::C), (std::vector<std::size_t>{5, 10, 15, 20}));
  EXPECT_EQ(default_grid(Axis::E), (std::vector<std::size_t>{5, 10, 15, 20, 25}));
  EXPECT_EQ(parse_axis("window"), Axis::C);
  EXPECT_THROW(parse_axis("Z"), ConfigError);
}

TEST(Sweep, IdenticalSweepsGiveIdenticalCombinedCsv) {
  auto c = two_communities();
  const auto a = scratch("sweep_a");
  const auto b = scratch("sweep_b");
  c.output_dir = a.string();
  run_sweep({Axis::C, {2, 5, 8}}, c);
  c.output_dir = b.string();
  run_sweep({Axis::C, {2, 5, 8}}, c);
  const auto ca = slurp(a / "combined.csv");
  EXPECT_EQ(std::count(ca.begin(), ca.end(), '\n'), 4);
  EXPECT_EQ(without_timing(ca), without_timing(slurp(b / "combined.csv")));
}

TEST(Sweep, FailingRunIsRecordedAndSweepContinues) {
  auto c = two_communities();
  const auto result = run_sweep({Axis::E, {0, 2}}, c);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures.front().value, 0u);
  ASSERT_EQ(result.points.size(), 1u);
  EXPECT_EQ(result.points.front().value, 2u);
}

TEST(Sweep, PrecisionDoesNotFallWithFeatures) {
  ExperimentConfig c;
  c.fixture = toy::planted_communities(1);
  c.training.epochs = 25;
  c.window_set = true;
  c.training.window = 10;
  c.training.workers = 1;
  const auto result = run_sweep({Axis::F, {}}, c);
  ASSERT_EQ(result.points.size(), 10u);
  double best = 0.0;
  for (const auto& p : result.points) {
    EXPECT_GE(p.report.precision, best - 0.02) << "F=" << p.value;
    best = std::max(best, p.report.precision);
  }
  EXPECT_GT(result.points.back().report.precision, result.points.front().report.precision - 0.02);
}

TEST(PlotData, ThreeEpochReportsGiveTwelveRows) {
  std::vector<SweepPoint> points;
  for (std::size_t e : {5, 10, 15}) {
    SweepPoint p;
    p.axis = Axis::E;
    p.value = e;
    p.report.echo.method = "KNI";
    p.report.precision = 0.1 * static_cast<double>(e) / 5.0;
    points.push_back(p);
  }
  const auto files = emit_plot_data(points);
  ASSERT_EQ(files.size(), 1u);
  const auto& csv = files.at("KNI_E.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "axis_value,metric,value");
  EXPECT_NE(csv.find("10,precision,0.2"), std::string::npos);
  EXPECT_EQ(emit_plot_data(points), files);
}

TEST(PlotData, KeyedByMethod) {
  std::vector<SweepPoint> points(2);
  points[0].report.echo.method = "KNI";
  points[1].report.echo.method = "CCD++";
  const auto files = emit_plot_data(points);
  EXPECT_EQ(files.size(), 2u);
  EXPECT_TRUE(files.contains("KNI_F.csv"));
  EXPECT_TRUE(files.contains("CCDpp_F.csv"));
}

TEST(PlotData, Errors) {
  EXPECT_THROW(emit_plot_data({}), Error);
  std::vector<SweepPoint> points(2);
  points[1].axis = Axis::C;
  EXPECT_THROW(emit_plot_data(points), Error);
}

TEST(PlotData, RoundTripThroughCombinedCsv) {
  auto c = two_communities();
  const auto dir = scratch("plot_roundtrip");
  c.output_dir = dir.string();
  const auto sweep = run_sweep({Axis::E, {2, 4, 6}}, c);
  std::ifstream in(dir / "combined.csv");
  const auto points = read_sweep_csv(in, Axis::E);
  EXPECT_EQ(emit_plot_data(points), emit_plot_data(sweep.points));
}
