#pragma once

#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/recommend/list.hpp>
#include <w2vrec/recommend/vote.hpp>

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace w2vrec::baselines {

struct CfOptions {
  std::size_t neighbors = 30;  // N
  std::size_t k = 10;
  bool filter_seen = false;
};

// Cosine similarity of the target row to every row sharing a venue with
// it, computed through the column lists. Sorted by descending similarity,
// ascending row on ties; rows with similarity 0 never appear.
inline std::vector<recommend::Neighbor> cf_neighbors(const InteractionMatrix& m, std::uint32_t target,
                                                     std::size_t n) {
  std::unordered_map<std::uint32_t, double> dots;
  for (const auto& [col, value] : m.row(target)) {
    for (const auto& [other, other_value] : m.col(col)) {
      if (other != target) dots[other] += value * other_value;
    }
  }
  const double target_norm = m.row_norm(target);
  std::vector<recommend::Neighbor> out;
  for (const auto& [other, d] : dots) {
    if (d > 0.0) out.push_back({other, d / (target_norm * m.row_norm(other))});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

// User-based collaborative filtering: venues scored by similarity-weighted
// sums of the neighbours' entries. Users sharing no venue with anyone get
// no prediction.
inline RecommendationList recommend_cf(const InteractionMatrix& m, const std::string& user,
                                       const CfOptions& opts) {
  if (opts.k < 1 || opts.neighbors < 1) throw ConfigError("CF needs k >= 1 and N >= 1");
  const auto row = m.find_user(user);
  if (!row) return RecommendationList::no_prediction(user, Method::CF, "unknown user");
  const auto neighbors = cf_neighbors(m, *row, opts.neighbors);
  if (neighbors.empty()) {
    return RecommendationList::no_prediction(user, Method::CF, "no user shares a venue");
  }
  std::unordered_set<std::uint32_t> exclude;
  if (opts.filter_seen) {
    for (const auto& [c, _] : m.row(*row)) exclude.insert(c);
  }
  const auto ranked = recommend::vote_top_k(
      std::span<const recommend::Neighbor>(neighbors), [&](std::uint32_t r) { return m.row(r); }, opts.k,
      recommend::TieBreak{}, exclude);
  RecommendationList list;
  list.user = user;
  list.method = Method::CF;
  for (const auto& r : ranked) list.items.push_back({m.venue_id(r.item), r.score});
  if (list.items.empty()) list.no_prediction_reason = "neighbours offer no unseen venue";
  return list;
}

}  // namespace w2vrec::baselines
