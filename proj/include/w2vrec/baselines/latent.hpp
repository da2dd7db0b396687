#pragma once

#include <w2vrec/baselines/factor_model.hpp>
#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/recommend/list.hpp>
#include <w2vrec/recommend/vote.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

namespace w2vrec::baselines {

struct LatentOptions {
  std::size_t neighbors = 30;  // N
  std::size_t k = 10;
  bool filter_seen = false;
  recommend::TieBreak ties;
};

// Top-n rows of `factors` by cosine to row `target`, excluding it.
inline std::vector<recommend::Neighbor> latent_neighbors(const Eigen::MatrixXd& factors, Eigen::Index target,
                                                         std::size_t n) {
  const double tn = factors.row(target).norm();
  std::vector<recommend::Neighbor> all;
  if (!(tn > 0.0)) return all;
  all.reserve(static_cast<std::size_t>(factors.rows()));
  for (Eigen::Index i = 0; i < factors.rows(); ++i) {
    if (i == target) continue;
    const double on = factors.row(i).norm();
    const double c = on > 0.0 ? factors.row(target).dot(factors.row(i)) / (tn * on) : 0.0;
    all.push_back({static_cast<std::uint32_t>(i), c});
  }
  const auto keep = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const auto& a, const auto& b) {
                      if (a.weight != b.weight) return a.weight > b.weight;
                      return a.id < b.id;
                    });
  all.resize(keep);
  return all;
}

// Neighbours found in the latent user space; venues then voted exactly as
// in the embedding NN recommender (unit neighbour weight, entry values).
inline RecommendationList recommend_latent_neighbors(const FactorModel& factors, const InteractionMatrix& m,
                                                     const std::string& user, const LatentOptions& opts,
                                                     Method method = Method::SVD) {
  if (opts.k < 1 || opts.neighbors < 1) throw ConfigError("latent-neighbour recommender needs k >= 1 and N >= 1");
  const auto row = m.find_user(user);
  if (!row || static_cast<Eigen::Index>(*row) >= factors.users.rows()) {
    return RecommendationList::no_prediction(user, method, "unknown user");
  }
  auto neighbors = latent_neighbors(factors.users, static_cast<Eigen::Index>(*row), opts.neighbors);
  if (neighbors.empty()) return RecommendationList::no_prediction(user, method, "zero latent vector");
  for (auto& n : neighbors) n.weight = 1.0;

  std::unordered_set<std::uint32_t> exclude;
  if (opts.filter_seen) {
    for (const auto& [c, _] : m.row(*row)) exclude.insert(c);
  }
  const auto ranked = recommend::vote_top_k(std::span<const recommend::Neighbor>(neighbors),
                                            [&](std::uint32_t r) { return m.row(r); }, opts.k, opts.ties, exclude);
  RecommendationList list;
  list.user = user;
  list.method = method;
  for (const auto& r : ranked) list.items.push_back({m.venue_id(r.item), r.score});
  if (list.items.empty()) list.no_prediction_reason = "neighbours offer no venue";
  return list;
}

}  // namespace w2vrec::baselines
