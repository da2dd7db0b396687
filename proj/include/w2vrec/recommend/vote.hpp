#pragma once

#include <w2vrec/rng.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

namespace w2vrec::recommend {

// (item index, value): a visit count, or 1 in binary mode.
using HistoryEntry = std::pair<std::uint32_t, double>;

struct Neighbor {
  std::uint32_t id = 0;
  double weight = 1.0;
};

struct ScoredItem {
  std::uint32_t item = 0;
  double score = 0.0;
};

struct TieBreak {
  bool randomized = false;
  std::uint64_t seed = 0;
};

// Each candidate item scores sum_n weight_n * value_n(item) over the
// neighbours' histories; the top k are returned by descending score with
// ties broken by ascending item index, or by a seeded shuffle when
// randomized. Items in `exclude` never appear.
template <typename HistoryFn>
std::vector<ScoredItem> vote_top_k(std::span<const Neighbor> neighbors, HistoryFn&& history,
                                   std::size_t k, const TieBreak& ties,
                                   const std::unordered_set<std::uint32_t>& exclude = {}) {
  std::map<std::uint32_t, double> votes;
  for (const auto& n : neighbors) {
    for (const auto& [item, value] : history(n.id)) {
      if (exclude.contains(item)) continue;
      votes[item] += n.weight * value;
    }
  }
  std::vector<ScoredItem> ranked;
  ranked.reserve(votes.size());
  for (const auto& [item, score] : votes) ranked.push_back({item, score});

  if (ties.randomized) {
    Rng rng(ties.seed);
    shuffle(ranked.begin(), ranked.end(), rng);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const ScoredItem& a, const ScoredItem& b) { return a.score > b.score; });
  } else {
    // map order is ascending item index already
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const ScoredItem& a, const ScoredItem& b) { return a.score > b.score; });
  }
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

}  // namespace w2vrec::recommend
