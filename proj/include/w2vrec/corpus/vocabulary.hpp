#pragma once

#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/error.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace w2vrec::corpus {

using TokenIndex = std::uint32_t;

inline constexpr std::string_view kUserPrefix = "U:";
inline constexpr std::string_view kVenuePrefix = "V:";

inline std::string user_token(std::string_view user) {
  std::string t(kUserPrefix);
  t.append(user);
  return t;
}

inline std::string venue_token(std::string_view venue) {
  std::string t(kVenuePrefix);
  t.append(venue);
  return t;
}

inline bool is_user_token(std::string_view token) { return token.starts_with(kUserPrefix); }
inline bool is_venue_token(std::string_view token) { return token.starts_with(kVenuePrefix); }

// Strips the namespace prefix.
inline std::string_view raw_id(std::string_view token) {
  return token.size() >= 2 && token[1] == ':' ? token.substr(2) : token;
}

// Bijective token <-> index map over prefixed user and venue tokens.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Tokens must carry a user or venue prefix and be unique.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> frequencies,
             std::uint64_t min_word_count = 1)
      : index_to_token_(std::move(tokens)),
        frequency_(std::move(frequencies)),
        min_word_count_(min_word_count) {
    if (index_to_token_.size() != frequency_.size()) {
      throw FormatError("vocabulary token and frequency counts differ");
    }
    for (std::size_t i = 0; i < index_to_token_.size(); ++i) {
      const auto& tok = index_to_token_[i];
      if (!is_user_token(tok) && !is_venue_token(tok)) {
        throw FormatError("vocabulary token without user/venue prefix: " + tok);
      }
      if (!token_to_index_.emplace(tok, static_cast<TokenIndex>(i)).second) {
        throw FormatError("duplicate vocabulary token: " + tok);
      }
      (is_user_token(tok) ? users_ : venues_).push_back(static_cast<TokenIndex>(i));
    }
  }

  std::size_t size() const { return index_to_token_.size(); }
  bool empty() const { return index_to_token_.empty(); }

  const std::string& token(TokenIndex i) const { return index_to_token_.at(i); }
  std::uint64_t frequency(TokenIndex i) const { return frequency_.at(i); }
  std::uint64_t min_word_count() const { return min_word_count_; }

  const std::vector<std::string>& tokens() const { return index_to_token_; }
  const std::vector<std::uint64_t>& frequencies() const { return frequency_; }

  std::optional<TokenIndex> find(std::string_view token) const {
    auto it = token_to_index_.find(std::string(token));
    if (it == token_to_index_.end()) return std::nullopt;
    return it->second;
  }

  TokenIndex index_of(std::string_view token) const {
    auto found = find(token);
    if (!found) throw LookupError("token not in vocabulary: " + std::string(token));
    return *found;
  }

  std::optional<TokenIndex> find_user(std::string_view user) const { return find(user_token(user)); }
  std::optional<TokenIndex> find_venue(std::string_view venue) const {
    return find(venue_token(venue));
  }

  bool is_user(TokenIndex i) const { return is_user_token(token(i)); }
  bool is_venue(TokenIndex i) const { return is_venue_token(token(i)); }

  // Ascending index order.
  const std::vector<TokenIndex>& user_indices() const { return users_; }
  const std::vector<TokenIndex>& venue_indices() const { return venues_; }

 private:
  std::vector<std::string> index_to_token_;
  std::vector<std::uint64_t> frequency_;
  std::uint64_t min_word_count_ = 1;
  std::unordered_map<std::string, TokenIndex> token_to_index_;
  std::vector<TokenIndex> users_;
  std::vector<TokenIndex> venues_;
};

// Indices follow first appearance in train (user token before venue token
// within each record). Users count their check-ins, venues count visits.
inline Vocabulary build_vocabulary(const std::vector<CheckinRecord>& train,
                                   std::uint64_t min_word_count = 1) {
  if (min_word_count < 1) throw ConfigError("min_word_count must be >= 1");
  if (train.empty()) throw EmptyVocabularyError("cannot build a vocabulary from an empty train set");

  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint64_t> counts;
  auto bump = [&](std::string token) {
    auto [it, inserted] = counts.try_emplace(token, 0);
    ++it->second;
    if (inserted) order.push_back(std::move(token));
  };
  for (const auto& r : train) {
    bump(user_token(r.user));
    bump(venue_token(r.venue));
  }

  std::vector<std::string> tokens;
  std::vector<std::uint64_t> freqs;
  for (auto& tok : order) {
    const auto f = counts[tok];
    if (f >= min_word_count) {
      tokens.push_back(std::move(tok));
      freqs.push_back(f);
    }
  }
  if (tokens.empty()) {
    throw EmptyVocabularyError("no token reaches min_word_count=" + std::to_string(min_word_count));
  }
  return Vocabulary(std::move(tokens), std::move(freqs), min_word_count);
}

}  // namespace w2vrec::corpus
