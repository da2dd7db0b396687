#pragma once

#include <w2vrec/embedding/model.hpp>
#include <w2vrec/embedding/sgns.hpp>
#include <w2vrec/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace w2vrec::embedding {

struct ScoredToken {
  TokenIndex token = 0;
  double score = 0.0;

  friend bool operator==(const ScoredToken&, const ScoredToken&) = default;
};

// Descending score, ascending token index on ties.
inline bool ranks_before(const ScoredToken& a, const ScoredToken& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.token < b.token;
}

template <typename Real>
double norm(std::span<const Real> v) {
  return std::sqrt(dot(v, v));
}

// Zero when either vector has zero norm.
template <typename Real>
double cosine(std::span<const Real> a, std::span<const Real> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

// Exhaustive cosine ranking of `candidates` against `query` using input
// rows. Returns min(k, |candidates|) entries.
template <typename Real, typename QueryReal>
std::vector<ScoredToken> top_k_similar(const EmbeddingModel<Real>& model,
                                       std::span<const QueryReal> query,
                                       std::span<const TokenIndex> candidates, std::size_t k) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (query.size() != model.features()) throw SimilarityError("query dimension mismatch");
  double qnorm = 0.0;
  for (auto x : query) qnorm += static_cast<double>(x) * x;
  qnorm = std::sqrt(qnorm);
  if (!(qnorm > 0.0) || !std::isfinite(qnorm)) throw SimilarityError("query vector has zero norm");

  std::vector<ScoredToken> scored;
  scored.reserve(candidates.size());
  const std::size_t f = model.features();
  for (auto c : candidates) {
    const auto row = model.input_row(c);
    double d = 0.0;
    double n2 = 0.0;
    for (std::size_t i = 0; i < f; ++i) {
      d += static_cast<double>(query[i]) * row[i];
      n2 += static_cast<double>(row[i]) * row[i];
    }
    const double s = n2 > 0.0 ? d / (qnorm * std::sqrt(n2)) : 0.0;
    scored.push_back({c, s});
  }
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                    ranks_before);
  scored.resize(keep);
  return scored;
}

template <typename Real>
std::vector<ScoredToken> top_k_similar(const EmbeddingModel<Real>& model, std::span<const Real> query,
                                       std::span<const TokenIndex> candidates, std::size_t k) {
  return top_k_similar<Real, Real>(model, query, candidates, k);
}

}  // namespace w2vrec::embedding
