#pragma once

#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/corpus/vocabulary.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace w2vrec::corpus {

// [user token, venue tokens in check-in order...]
struct Sentence {
  std::vector<TokenIndex> tokens;

  TokenIndex user() const { return tokens.front(); }
  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct SentenceSet {
  std::vector<Sentence> sentences;  // ascending user token index
  std::size_t max_length = 0;
  std::size_t venue_occurrences = 0;  // sum of (length - 1)
};

// One sentence per in-vocabulary user with at least one in-vocabulary
// venue. Venues are ordered by timestamp, ties kept in input order.
inline SentenceSet build_sentences(const std::vector<CheckinRecord>& train, const Vocabulary& vocab) {
  struct Visit {
    std::int64_t timestamp;
    std::size_t position;
    TokenIndex venue;
  };
  std::map<TokenIndex, std::vector<Visit>> by_user;
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& r = train[i];
    const auto user = vocab.find_user(r.user);
    const auto venue = vocab.find_venue(r.venue);
    if (!user || !venue) continue;
    by_user[*user].push_back({r.timestamp, i, *venue});
  }

  SentenceSet out;
  out.sentences.reserve(by_user.size());
  for (auto& [user, visits] : by_user) {
    std::stable_sort(visits.begin(), visits.end(),
                     [](const Visit& a, const Visit& b) { return a.timestamp < b.timestamp; });
    Sentence s;
    s.tokens.reserve(visits.size() + 1);
    s.tokens.push_back(user);
    for (const auto& v : visits) s.tokens.push_back(v.venue);
    out.max_length = std::max(out.max_length, s.size());
    out.venue_occurrences += visits.size();
    out.sentences.push_back(std::move(s));
  }
  return out;
}

}  // namespace w2vrec::corpus
