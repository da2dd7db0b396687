#pragma once

#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/rng.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

namespace w2vrec::corpus {

inline constexpr std::int64_t kJan2011 = 1293840000;  // 2011-01-01T00:00:00Z
inline constexpr std::int64_t kFeb2011 = 1296518400;  // 2011-02-01T00:00:00Z
inline constexpr std::int64_t kMar2011 = 1298937600;  // 2011-03-01T00:00:00Z

// Synthetic check-in population: users belong to communities and mostly
// visit their own community's venues. Train check-ins fall in January 2011,
// test check-ins in February 2011.
struct FixtureSpec {
  std::uint64_t seed = 1;
  std::size_t communities = 4;
  std::size_t users_per_community = 50;
  std::size_t venues_per_community = 100;
  std::size_t train_per_user = 20;
  std::size_t test_per_user = 5;
  double noise = 0.0;  // probability a check-in goes to another community
  // Each user gets this many favourite venues inside the community;
  // 0 means check-ins are uniform over the community.
  std::size_t favorites_per_user = 0;
  double favorite_rate = 0.8;
  // Test visits to favourites avoid repeating a favourite while unvisited
  // ones remain.
  bool distinct_test_favorites = true;
  // Every venue receives at least one train check-in.
  bool cover_all_venues = false;

  void validate() const {
    if (communities == 0 || users_per_community == 0 || venues_per_community == 0) {
      throw ConfigError("fixture needs at least one community, user and venue");
    }
    if (noise < 0.0 || noise > 1.0) throw ConfigError("fixture noise must be in [0, 1]");
    if (favorite_rate < 0.0 || favorite_rate > 1.0) {
      throw ConfigError("favorite_rate must be in [0, 1]");
    }
    if (favorites_per_user > venues_per_community) {
      throw ConfigError("favorites_per_user exceeds venues_per_community");
    }
    if (cover_all_venues && users_per_community * train_per_user < venues_per_community) {
      throw ConfigError("not enough train check-ins to cover every venue");
    }
  }
};

struct Fixture {
  std::vector<CheckinRecord> records;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::size_t train_users = 0;   // distinct users with a train check-in
  std::size_t train_venues = 0;  // distinct venues with a train check-in
  std::int64_t boundary = kFeb2011;
  std::vector<std::size_t> community_of_venue;  // indexed by venue number
};

inline std::string fixture_user_id(std::size_t n) { return "u" + std::to_string(n); }
inline std::string fixture_venue_id(std::size_t n) { return "v" + std::to_string(n); }

inline Fixture generate_fixture(const FixtureSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t vpc = spec.venues_per_community;
  const std::size_t total_venues = spec.communities * vpc;

  Fixture fx;
  fx.community_of_venue.resize(total_venues);
  for (std::size_t v = 0; v < total_venues; ++v) fx.community_of_venue[v] = v / vpc;

  std::unordered_set<std::size_t> train_venues;
  std::vector<std::size_t> pool(vpc);

  for (std::size_t c = 0; c < spec.communities; ++c) {
    for (std::size_t i = 0; i < spec.users_per_community; ++i) {
      const std::size_t user = c * spec.users_per_community + i;

      std::vector<std::size_t> favorites;
      if (spec.favorites_per_user > 0) {
        std::iota(pool.begin(), pool.end(), c * vpc);
        for (std::size_t f = 0; f < spec.favorites_per_user; ++f) {
          const auto j = f + rng.below(vpc - f);
          std::swap(pool[f], pool[j]);
          favorites.push_back(pool[f]);
        }
      }

      auto draw_other = [&]() -> std::size_t {
        if (spec.communities > 1 && rng.uniform() < spec.noise) {
          std::size_t other = rng.below(spec.communities - 1);
          if (other >= c) ++other;
          return other * vpc + rng.below(vpc);
        }
        return c * vpc + rng.below(vpc);
      };

      std::vector<std::size_t> train(spec.train_per_user);
      for (auto& v : train) {
        if (!favorites.empty() && rng.uniform() < spec.favorite_rate) {
          v = favorites[rng.below(favorites.size())];
        } else {
          v = draw_other();
        }
      }
      if (spec.cover_all_venues) {
        // Venue j of the community is forced into user (j mod users)'s slot j / users.
        for (std::size_t j = i; j < vpc; j += spec.users_per_community) {
          train[j / spec.users_per_community] = c * vpc + j;
        }
      }

      std::vector<std::size_t> unused = favorites;
      std::vector<std::size_t> test(spec.test_per_user);
      for (auto& v : test) {
        if (!favorites.empty() && rng.uniform() < spec.favorite_rate) {
          if (spec.distinct_test_favorites) {
            if (unused.empty()) unused = favorites;
            const auto j = rng.below(unused.size());
            v = unused[j];
            unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(j));
          } else {
            v = favorites[rng.below(favorites.size())];
          }
        } else {
          v = draw_other();
        }
      }

      for (auto v : train) {
        const auto ts = rng.between(kJan2011, kFeb2011 - 1);
        fx.records.push_back({fixture_user_id(user), fixture_venue_id(v), ts});
        train_venues.insert(v);
      }
      for (auto v : test) {
        const auto ts = rng.between(kFeb2011, kMar2011 - 1);
        fx.records.push_back({fixture_user_id(user), fixture_venue_id(v), ts});
      }
      fx.train_count += train.size();
      fx.test_count += test.size();
      if (!train.empty()) ++fx.train_users;
    }
  }
  fx.train_venues = train_venues.size();
  return fx;
}

}  // namespace w2vrec::corpus
