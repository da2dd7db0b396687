#pragma once

#include <w2vrec/error.hpp>
#include <w2vrec/recommend/list.hpp>
#include <w2vrec/rng.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace w2vrec::baselines {

// k distinct venues drawn uniformly without replacement. k larger than the
// catalog returns the whole catalog shuffled. Score of rank i is 1/(i+1).
inline RecommendationList recommend_random(const std::vector<std::string>& catalog, std::size_t k,
                                           std::uint64_t seed, const std::string& user = {}) {
  if (catalog.empty()) throw ConfigError("random recommender needs a non-empty catalog");
  if (k < 1) throw ConfigError("k must be >= 1");
  const std::size_t n = catalog.size();
  const std::size_t take = std::min(k, n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
  }
  RecommendationList list;
  list.user = user;
  list.method = Method::Random;
  for (std::size_t i = 0; i < take; ++i) {
    list.items.push_back({catalog[idx[i]], 1.0 / static_cast<double>(i + 1)});
  }
  return list;
}

}  // namespace w2vrec::baselines
