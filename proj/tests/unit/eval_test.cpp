#include "recompute.hpp"

#include <w2vrec/baselines/cf.hpp>
#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/corpus/dataset.hpp>
#include <w2vrec/corpus/fixture.hpp>
#include <w2vrec/eval/metrics.hpp>
#include <w2vrec/eval/report.hpp>
#include <w2vrec/rng.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace w2vrec;
using namespace w2vrec::eval;

namespace {

using Venues = std::vector<std::string>;

RecommendationList list_of(const std::string& user, const Venues& venues) {
  RecommendationList l;
  l.user = user;
  double score = 1.0;
  for (const auto& v : venues) l.items.push_back({v, score -= 0.01});
  return l;
}

}  // namespace

TEST(Precision, Examples) {
  const RelevantSet rel{"a", "b", "c"};
  EXPECT_EQ(precision_at_k(Venues{"a", "b", "c"}, rel, 3), 1.0);
  EXPECT_EQ(precision_at_k(Venues{"x", "y"}, rel, 2), 0.0);
  EXPECT_DOUBLE_EQ(precision_at_k(Venues{"x", "a", "y", "z", "b", "q", "w", "c", "e", "r"}, rel, 10), 0.3);
  EXPECT_DOUBLE_EQ(precision_at_k(Venues{"a"}, rel, 10), 0.1);
  EXPECT_THROW(precision_at_k(Venues{"a", "b"}, rel, 1), EvaluationError);
  EXPECT_THROW(precision_at_k(Venues{}, rel, 0), EvaluationError);
}

// Recommending exactly each user's relevant set bounds precision@10 by
// mean(min(|relevant|, 10)) / 10.
TEST(Precision, CeilingFromRelevantSetSizes) {
  GroundTruth gt;
  for (int u = 0; u < 100; ++u) {
    const int size = u < 89 ? 5 : 4;
    for (int v = 0; v < size; ++v) gt["u" + std::to_string(u)].insert("v" + std::to_string(v));
  }
  std::vector<RecommendationList> perfect;
  for (const auto& [user, rel] : gt) perfect.push_back(list_of(user, Venues(rel.begin(), rel.end())));
  const auto report = aggregate(score_users(gt, perfect, 10), {}, {});
  EXPECT_NEAR(report.precision, 0.489, 1e-12);
  EXPECT_EQ(report.ndcg, 1.0);
}

TEST(Ndcg, Examples) {
  const RelevantSet one{"r"};
  EXPECT_DOUBLE_EQ(ndcg_at_k(Venues{"r", "x"}, one, 10), 1.0);
  EXPECT_NEAR(ndcg_at_k(Venues{"x", "r"}, one, 10), 1.0 / std::log2(3.0), 1e-15);
  EXPECT_NEAR(ndcg_at_k(Venues{"x", "r"}, one, 10), 0.6309, 5e-5);
  const RelevantSet three{"a", "b", "c"};
  EXPECT_DOUBLE_EQ(ndcg_at_k(Venues{"c", "a", "b", "x"}, three, 10), 1.0);
  EXPECT_DOUBLE_EQ(ndcg_at_k(Venues{"x", "y"}, three, 10), 0.0);
  // IDCG over min(k, |relevant|): k=2 with three relevant items.
  EXPECT_DOUBLE_EQ(ndcg_at_k(Venues{"a", "b"}, three, 2), 1.0);
  EXPECT_THROW(ndcg_at_k(Venues{"a"}, RelevantSet{}, 2), EvaluationError);
}

TEST(HitRateAndCoverage, Examples) {
  EXPECT_EQ(hit_rate(std::vector<int>{1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(hit_rate(std::vector<int>{1, 0, 1, 0, 1}), 0.6);
  EXPECT_THROW(hit_rate(std::vector<int>{}), EvaluationError);
  EXPECT_EQ(prediction_coverage(std::vector<int>{0}), 0.0);
  EXPECT_THROW(prediction_coverage(std::vector<int>{}), EvaluationError);

  const GroundTruth gt{{"a", {"v"}}, {"b", {"v"}}};
  const std::vector<RecommendationList> lists{list_of("a", {"v"}),
                                              RecommendationList::no_prediction("b", Method::KNI, "x")};
  const auto rows = score_users(gt, lists, 10);
  EXPECT_EQ(rows[1], (UserMetrics{"b", 0.0, 0.0, 0, 0}));
  const auto report = aggregate(rows, {}, {});
  EXPECT_EQ(report.hitrate, 0.5);
  EXPECT_EQ(report.coverage, 0.5);
}

TEST(Coverage, CfWithOneIsolatedUserAmongTwenty) {
  std::vector<corpus::CheckinRecord> train, test;
  for (int u = 0; u < 19; ++u) {
    train.push_back({"u" + std::to_string(u), "shared" + std::to_string(u % 3), u});
    train.push_back({"u" + std::to_string(u), "v" + std::to_string(u), u});
    test.push_back({"u" + std::to_string(u), "shared0", 100});
  }
  train.push_back({"user81", "alone", 1});
  test.push_back({"user81", "shared0", 100});
  const corpus::Dataset ds{train, test};
  const auto gt = build_ground_truth(ds);
  ASSERT_EQ(gt.size(), 20u);
  const auto m = baselines::InteractionMatrix::from_records(ds.train);
  std::vector<RecommendationList> lists;
  for (const auto& [user, _] : gt) lists.push_back(baselines::recommend_cf(m, user, {}));
  const auto report = aggregate(score_users(gt, lists, 10), {}, {});
  EXPECT_EQ(report.coverage, 0.95);
}

TEST(GroundTruth, DistinctVenuesOfTrainedUsers) {
  const corpus::Dataset ds{{{"a", "x", 1}, {"b", "y", 1}}, {{"a", "p", 5}, {"a", "p", 6}, {"a", "q", 7}, {"cold", "p", 5}}};
  const auto gt = build_ground_truth(ds);
  ASSERT_EQ(gt.size(), 1u);
  EXPECT_EQ(gt.at("a"), (RelevantSet{"p", "q"}));
}

TEST(Aggregate, MeansAndTimings) {
  const std::vector<UserMetrics> rows{{"a", 0.2, 0.5, 1, 1}, {"b", 0.4, 0.25, 1, 1}};
  const auto r = aggregate(rows, Timings{3.0, 0.5}, RunEcho{"KNI", "skip-gram", 100, 20, 25, 30, 10});
  EXPECT_DOUBLE_EQ(r.precision, 0.3);
  EXPECT_DOUBLE_EQ(r.ndcg, 0.375);
  EXPECT_EQ(r.recommend_seconds_per_user, 0.25);
  const auto single = aggregate({rows[0]}, {}, {});
  EXPECT_EQ(single.precision, 0.2);
  EXPECT_EQ(single.ndcg, 0.5);
  EXPECT_EQ(single.hitrate, 1.0);
  EXPECT_THROW(aggregate({}, {}, {}), EvaluationError);
}

TEST(Report, CsvAndJsonShareFieldNames) {
  const auto r = aggregate({{"a", 0.1, 0.2, 1, 1}}, Timings{1.5, 0.25}, RunEcho{"CCD++", "", 10, 0, 0, 30, 10});
  std::ostringstream csv;
  write_report_csv(csv, {r});
  EXPECT_EQ(csv.str(), std::string(kReportHeader) + "\nCCD++,,10,0,0,30,10,0.1,0.2,1,1,1.5,0.25,0.25\n");
  const auto j = report_json(r);
  std::stringstream header(kReportHeader);
  std::string field;
  std::size_t fields = 0;
  while (std::getline(header, field, ',')) {
    EXPECT_TRUE(j.contains(field)) << field;
    ++fields;
  }
  EXPECT_EQ(j.size(), fields);
  EXPECT_EQ(format_number(0.1 + 0.2), "0.30000000000000004");
}

TEST(Report, AggregateMatchesRecomputedUserCsv) {
  corpus::FixtureSpec spec;
  spec.seed = 17;
  spec.noise = 0.2;
  const auto fx = corpus::generate_fixture(spec);
  const auto ds = corpus::split_train_test(fx.records, fx.boundary);
  const auto gt = build_ground_truth(ds);
  const auto m = baselines::InteractionMatrix::from_records(ds.train);
  std::vector<RecommendationList> lists;
  for (const auto& [user, _] : gt) lists.push_back(baselines::recommend_cf(m, user, {}));
  const auto report = aggregate(score_users(gt, lists, 10), {}, {});
  std::stringstream csv;
  write_user_csv(csv, report.users);
  const auto again = oracle::recompute_from_user_csv(csv);
  EXPECT_EQ(again.users, gt.size());
  EXPECT_NEAR(again.precision, report.precision, 1e-12);
  EXPECT_NEAR(again.ndcg, report.ndcg, 1e-12);
  EXPECT_NEAR(again.hitrate, report.hitrate, 1e-12);
  EXPECT_NEAR(again.coverage, report.coverage, 1e-12);
  EXPECT_GT(report.precision, 0.0);
}

// Random lists against random truths: per-user bounds, the hit/precision
// equivalence, coverage >= hitrate, and invariance under user permutation.
TEST(Metrics, PropertiesOnRandomLists) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng.below(15);
    GroundTruth gt;
    std::vector<RecommendationList> lists;
    const std::size_t users = 1 + rng.below(30);
    for (std::size_t u = 0; u < users; ++u) {
      const std::string user = "u" + std::to_string(u);
      const std::size_t rel = 1 + rng.below(8);
      for (std::size_t i = 0; i < rel; ++i) gt[user].insert("v" + std::to_string(rng.below(40)));
      if (rng.uniform() < 0.15) continue;
      std::vector<std::string> pool;
      for (int v = 0; v < 40; ++v) pool.push_back("v" + std::to_string(v));
      shuffle(pool.begin(), pool.end(), rng);
      pool.resize(1 + rng.below(k));
      lists.push_back(list_of(user, pool));
    }
    const auto rows = score_users(gt, lists, k);
    for (const auto& r : rows) {
      const double relevant = static_cast<double>(gt.at(r.user).size());
      EXPECT_GE(r.ndcg, 0.0);
      EXPECT_LE(r.ndcg, 1.0 + 1e-12);
      EXPECT_GE(r.precision, 0.0);
      EXPECT_LE(r.precision, std::min(1.0, relevant / static_cast<double>(k)) + 1e-12);
      EXPECT_EQ(r.precision > 0.0, r.hit == 1);
    }
    const auto report = aggregate(rows, {}, {});
    EXPECT_GE(report.coverage, report.hitrate);
    for (double x : {report.precision, report.ndcg, report.hitrate, report.coverage}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    auto shuffled = rows;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto again = aggregate(shuffled, {}, {});
    EXPECT_NEAR(again.precision, report.precision, 1e-12);
    EXPECT_NEAR(again.ndcg, report.ndcg, 1e-12);
    EXPECT_EQ(again.hitrate, report.hitrate);
    EXPECT_EQ(again.coverage, report.coverage);
  }
}
