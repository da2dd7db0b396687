#pragma once

#include <w2vrec/corpus/dataset.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/recommend/list.hpp>

#include <cmath>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace w2vrec::eval {

using RelevantSet = std::set<std::string>;

// Distinct test venues per user, for users with at least one train and one
// test check-in. Ordered by user id.
using GroundTruth = std::map<std::string, RelevantSet>;

inline GroundTruth build_ground_truth(const corpus::Dataset& ds) {
  std::unordered_set<std::string> trained;
  for (const auto& r : ds.train) trained.insert(r.user);
  GroundTruth gt;
  for (const auto& r : ds.test) {
    if (trained.contains(r.user)) gt[r.user].insert(r.venue);
  }
  return gt;
}

inline std::size_t count_hits(std::span<const std::string> recommended, const RelevantSet& relevant) {
  std::size_t hits = 0;
  for (const auto& v : recommended) hits += relevant.contains(v) ? 1 : 0;
  return hits;
}

// |recommended ∩ relevant| / k, with k as the denominator even for short lists.
inline double precision_at_k(std::span<const std::string> recommended, const RelevantSet& relevant,
                             std::size_t k) {
  if (k == 0) throw EvaluationError("k must be >= 1");
  if (recommended.size() > k) throw EvaluationError("more than k recommendations");
  return static_cast<double>(count_hits(recommended, relevant)) / static_cast<double>(k);
}

// Binary-relevance NDCG: DCG = sum_i rel_i / log2(i + 1) over 1-based ranks,
// normalised by the ideal DCG of min(k, |relevant|) hits.
inline double ndcg_at_k(std::span<const std::string> recommended, const RelevantSet& relevant,
                        std::size_t k) {
  if (k == 0) throw EvaluationError("k must be >= 1");
  if (recommended.size() > k) throw EvaluationError("more than k recommendations");
  if (relevant.empty()) throw EvaluationError("empty relevant set");
  double dcg = 0.0;
  for (std::size_t i = 0; i < recommended.size(); ++i) {
    if (relevant.contains(recommended[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  const std::size_t ideal = std::min(k, relevant.size());
  double idcg = 0.0;
  for (std::size_t i = 0; i < ideal; ++i) idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / idcg;
}

// HitRate = sum_m HitRate_m / |M|
inline double hit_rate(std::span<const int> hits) {
  if (hits.empty()) throw EvaluationError("hit rate over an empty user set");
  double s = 0.0;
  for (int h : hits) s += h;
  return s / static_cast<double>(hits.size());
}

inline double prediction_coverage(std::span<const int> predicted) {
  if (predicted.empty()) throw EvaluationError("coverage over an empty user set");
  double s = 0.0;
  for (int p : predicted) s += p;
  return s / static_cast<double>(predicted.size());
}

struct UserMetrics {
  std::string user;
  double precision = 0.0;
  double ndcg = 0.0;
  int hit = 0;
  int predicted = 0;

  friend bool operator==(const UserMetrics&, const UserMetrics&) = default;
};

inline UserMetrics score_user(const std::string& user, const RecommendationList* list,
                              const RelevantSet& relevant, std::size_t k) {
  UserMetrics row;
  row.user = user;
  if (list == nullptr || !list->predicted()) return row;
  std::vector<std::string> venues;
  for (std::size_t i = 0; i < list->items.size() && i < k; ++i) venues.push_back(list->items[i].venue);
  row.predicted = 1;
  row.precision = precision_at_k(venues, relevant, k);
  row.ndcg = ndcg_at_k(venues, relevant, k);
  row.hit = count_hits(venues, relevant) > 0 ? 1 : 0;
  return row;
}

// One row per ground-truth user, in ground-truth order. Users without a
// list count as coverage misses.
inline std::vector<UserMetrics> score_users(const GroundTruth& gt, const std::vector<RecommendationList>& lists,
                                            std::size_t k) {
  std::unordered_map<std::string, const RecommendationList*> by_user;
  for (const auto& l : lists) by_user[l.user] = &l;
  std::vector<UserMetrics> rows;
  rows.reserve(gt.size());
  for (const auto& [user, relevant] : gt) {
    auto it = by_user.find(user);
    rows.push_back(score_user(user, it == by_user.end() ? nullptr : it->second, relevant, k));
  }
  return rows;
}

}  // namespace w2vrec::eval
