#pragma once

#include <w2vrec/corpus/sentences.hpp>
#include <w2vrec/recommend/vote.hpp>

#include <map>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace w2vrec::recommend {

// Per user token: the venue tokens visited in train with visit counts,
// ascending venue index.
class Interactions {
 public:
  Interactions() = default;

  static Interactions from_sentences(const std::vector<corpus::Sentence>& sentences,
                                     bool binary = false) {
    Interactions out;
    for (const auto& s : sentences) {
      std::map<std::uint32_t, double> counts;
      for (std::size_t i = 1; i < s.tokens.size(); ++i) counts[s.tokens[i]] += 1.0;
      auto& row = out.rows_[s.user()];
      for (const auto& [venue, count] : counts) row.emplace_back(venue, binary ? 1.0 : count);
    }
    return out;
  }

  std::span<const HistoryEntry> history(std::uint32_t user) const {
    auto it = rows_.find(user);
    if (it == rows_.end()) return {};
    return it->second;
  }

  std::unordered_set<std::uint32_t> seen(std::uint32_t user) const {
    std::unordered_set<std::uint32_t> out;
    for (const auto& [venue, _] : history(user)) out.insert(venue);
    return out;
  }

  std::size_t users() const { return rows_.size(); }

 private:
  std::unordered_map<std::uint32_t, std::vector<HistoryEntry>> rows_;
};

}  // namespace w2vrec::recommend
