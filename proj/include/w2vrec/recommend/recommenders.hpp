#pragma once

#include <w2vrec/corpus/vocabulary.hpp>
#include <w2vrec/embedding/model.hpp>
#include <w2vrec/embedding/similarity.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/recommend/interactions.hpp>
#include <w2vrec/recommend/list.hpp>
#include <w2vrec/recommend/vote.hpp>

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace w2vrec::recommend {

struct RecommendationRequest {
  std::string user;  // raw user id
  std::size_t k = 10;
  std::size_t neighbors = 30;  // N, for NN and KIU
  bool filter_seen = false;
  bool randomized_ties = false;  // NN only
  std::uint64_t seed = 0;
  bool weighted_kiu = false;  // KIU query weights neighbours by similarity

  void validate(bool needs_neighbors) const {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (needs_neighbors && neighbors < 1) throw ConfigError("N must be >= 1");
  }
};

// KNI / NN / KIU over a trained model. Read-only; safe to share between
// threads once training has finished.
template <typename Real>
class EmbeddingRecommender {
 public:
  EmbeddingRecommender(const embedding::EmbeddingModel<Real>& model, Interactions interactions)
      : model_(model), interactions_(std::move(interactions)) {}

  const Interactions& interactions() const { return interactions_; }

  RecommendationList recommend(Method method, const RecommendationRequest& req) const {
    switch (method) {
      case Method::KNI: return kni(req);
      case Method::NN: return nn(req);
      case Method::KIU: return kiu(req);
      default: throw ConfigError("not an embedding method: " + std::string(to_string(method)));
    }
  }

  // Venues ranked by cosine to the user's vector.
  RecommendationList kni(const RecommendationRequest& req) const {
    req.validate(false);
    const auto user = model_.vocab().find_user(req.user);
    if (!user) return RecommendationList::no_prediction(req.user, Method::KNI, "unknown user");
    return rank_venues(Method::KNI, req, *user, model_.input_row(*user));
  }

  // Venues voted by the N most similar users, weighted by visit counts.
  RecommendationList nn(const RecommendationRequest& req) const {
    req.validate(true);
    const auto user = model_.vocab().find_user(req.user);
    if (!user) return RecommendationList::no_prediction(req.user, Method::NN, "unknown user");

    std::vector<Neighbor> neighbors;
    try {
      for (const auto& s : nearest_users(*user, req.neighbors)) neighbors.push_back({s.token, 1.0});
    } catch (const SimilarityError& e) {
      return RecommendationList::no_prediction(req.user, Method::NN, e.what());
    }
    std::unordered_set<std::uint32_t> exclude;
    if (req.filter_seen) exclude = interactions_.seen(*user);
    const auto ranked = vote_top_k(
        std::span<const Neighbor>(neighbors), [&](std::uint32_t id) { return interactions_.history(id); },
        req.k, TieBreak{req.randomized_ties, req.seed}, exclude);

    RecommendationList list;
    list.user = req.user;
    list.method = Method::NN;
    for (const auto& r : ranked) {
      list.items.push_back({std::string(corpus::raw_id(model_.vocab().token(r.item))), r.score});
    }
    if (list.items.empty()) list.no_prediction_reason = "neighbours have no venues";
    return list;
  }

  // Venues ranked by cosine to the mean of the user's and its N nearest
  // users' vectors.
  RecommendationList kiu(const RecommendationRequest& req) const {
    req.validate(true);
    const auto user = model_.vocab().find_user(req.user);
    if (!user) return RecommendationList::no_prediction(req.user, Method::KIU, "unknown user");
    const std::size_t f = model_.features();
    try {
      const auto neighbors = nearest_users(*user, req.neighbors);
      std::vector<double> query(f, 0.0);
      double total = 1.0;
      const auto own = model_.input_row(*user);
      for (std::size_t d = 0; d < f; ++d) query[d] = own[d];
      for (const auto& n : neighbors) {
        const double w = req.weighted_kiu ? n.score : 1.0;
        const auto row = model_.input_row(n.token);
        for (std::size_t d = 0; d < f; ++d) query[d] += w * row[d];
        total += w;
      }
      if (total != 0.0) {
        for (auto& q : query) q /= total;
      }
      return rank_venues(Method::KIU, req, *user, std::span<const double>(query));
    } catch (const SimilarityError& e) {
      return RecommendationList::no_prediction(req.user, Method::KIU, e.what());
    }
  }

  // Top-N other users by cosine of user vectors.
  std::vector<embedding::ScoredToken> nearest_users(corpus::TokenIndex user, std::size_t n) const {
    std::vector<corpus::TokenIndex> others;
    others.reserve(model_.vocab().user_indices().size());
    for (auto u : model_.vocab().user_indices()) {
      if (u != user) others.push_back(u);
    }
    if (others.empty()) return {};
    return embedding::top_k_similar(model_, model_.input_row(user),
                                    std::span<const corpus::TokenIndex>(others), n);
  }

 private:
  template <typename QueryReal>
  RecommendationList rank_venues(Method method, const RecommendationRequest& req,
                                 corpus::TokenIndex user, std::span<const QueryReal> query) const {
    const auto& venues = model_.vocab().venue_indices();
    std::vector<corpus::TokenIndex> filtered;
    std::span<const corpus::TokenIndex> candidates(venues);
    if (req.filter_seen) {
      const auto seen = interactions_.seen(user);
      for (auto v : venues) {
        if (!seen.contains(v)) filtered.push_back(v);
      }
      candidates = filtered;
    }
    RecommendationList list;
    list.user = req.user;
    list.method = method;
    if (candidates.empty()) {
      list.no_prediction_reason = "no candidate venues";
      return list;
    }
    try {
      for (const auto& s : embedding::top_k_similar(model_, query, candidates, req.k)) {
        list.items.push_back({std::string(corpus::raw_id(model_.vocab().token(s.token))), s.score});
      }
    } catch (const SimilarityError& e) {
      return RecommendationList::no_prediction(req.user, method, e.what());
    }
    return list;
  }

  const embedding::EmbeddingModel<Real>& model_;
  Interactions interactions_;
};

}  // namespace w2vrec::recommend
