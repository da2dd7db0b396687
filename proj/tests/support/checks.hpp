#pragma once

// Randomised checks shared by the unit suites and the acceptance binary.

#include "oracles.hpp"

#include <w2vrec/corpus/vocabulary.hpp>
#include <w2vrec/embedding/model.hpp>
#include <w2vrec/embedding/sgns.hpp>
#include <w2vrec/recommend/recommenders.hpp>
#include <w2vrec/rng.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace checks {

struct GradientCheck {
  std::size_t configurations = 0;
  double worst_relative_error = 0.0;
};

inline double relative_error(const std::vector<double>& analytic, const std::vector<double>& numeric) {
  double diff = 0.0, a = 0.0, n = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    a += analytic[i] * analytic[i];
    n += numeric[i] * numeric[i];
  }
  const double scale = std::max(std::sqrt(a), std::sqrt(n));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

// Analytic gradients against central differences of the direct loss
// formula, per participating vector.
inline GradientCheck gradient_check(std::size_t configurations, std::uint64_t seed, double h = 1e-6) {
  using w2vrec::Rng;
  Rng rng(seed);
  const std::size_t dims[] = {2, 10, 50};
  GradientCheck out;
  for (std::size_t c = 0; c < configurations; ++c) {
    const std::size_t f = dims[c % 3];
    const std::size_t negatives = 1 + rng.below(6);
    const double scale = rng.uniform(0.1, 2.0) / std::sqrt(static_cast<double>(f));
    auto draw = [&] {
      std::vector<double> v(f);
      for (auto& x : v) x = rng.normal() * scale;
      return v;
    };
    std::vector<double> center = draw(), context = draw();
    std::vector<std::vector<double>> negs;
    for (std::size_t i = 0; i < negatives; ++i) negs.push_back(draw());

    std::vector<std::span<const double>> neg_spans(negs.begin(), negs.end());
    const auto g = w2vrec::embedding::negative_sampling_gradient<double>(center, context, neg_spans);

    auto numeric = [&](std::vector<double>& v) {
      std::vector<double> grad(f);
      for (std::size_t d = 0; d < f; ++d) {
        const double keep = v[d];
        v[d] = keep + h;
        const double up = oracle::sgns_loss(center, context, negs);
        v[d] = keep - h;
        const double down = oracle::sgns_loss(center, context, negs);
        v[d] = keep;
        grad[d] = (up - down) / (2.0 * h);
      }
      return grad;
    };
    double worst = relative_error(g.center, numeric(center));
    worst = std::max(worst, relative_error(g.context, numeric(context)));
    for (std::size_t i = 0; i < negatives; ++i) worst = std::max(worst, relative_error(g.negatives[i], numeric(negs[i])));
    worst = std::max(worst, std::abs(g.loss - oracle::sgns_loss(center, context, negs)) /
                                std::max(1.0, std::abs(g.loss)));
    out.worst_relative_error = std::max(out.worst_relative_error, worst);
    ++out.configurations;
  }
  return out;
}

struct TopKCheck {
  std::size_t models = 0;
  std::size_t mismatches = 0;
};

// Random single-user models; KNI for that user against a full sort of all
// venue cosines. Some rows are duplicated so that ties occur.
inline TopKCheck kni_matches_brute_force(std::size_t models, std::uint64_t seed, std::size_t max_venues = 10000,
                                         std::size_t max_features = 100) {
  using namespace w2vrec;
  Rng rng(seed);
  TopKCheck out;
  for (std::size_t m = 0; m < models; ++m) {
    const std::size_t venues = 1 + rng.below(max_venues);
    const std::size_t f = 1 + rng.below(max_features);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(venues, 50));
    std::vector<std::string> tokens{"U:target"};
    std::vector<std::uint64_t> freqs{1};
    for (std::size_t v = 0; v < venues; ++v) {
      tokens.push_back("V:" + std::to_string(v));
      freqs.push_back(1);
    }
    embedding::TrainingConfig config;
    config.features = f;
    embedding::EmbeddingModel<float> model(corpus::Vocabulary(tokens, freqs), config);
    auto& in = model.input_matrix();
    for (auto& x : in) x = static_cast<float>(rng.normal());
    for (std::size_t v = 2; v <= venues; ++v) {
      if (rng.uniform() < 0.05) {
        const auto src = 1 + rng.below(v - 1);
        std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(src * f), f,
                    in.begin() + static_cast<std::ptrdiff_t>(v * f));
      }
    }

    oracle::Matrix rows(venues + 1, std::vector<double>(f));
    for (std::size_t r = 0; r <= venues; ++r)
      for (std::size_t d = 0; d < f; ++d) rows[r][d] = in[r * f + d];
    std::vector<std::size_t> candidates(venues);
    std::iota(candidates.begin(), candidates.end(), 1);
    const auto expected = oracle::brute_force_cosine(rows, rows[0], candidates, k);

    recommend::EmbeddingRecommender<float> rec(model, recommend::Interactions{});
    recommend::RecommendationRequest req;
    req.user = "target";
    req.k = k;
    const auto got = rec.kni(req);

    bool same = got.items.size() == expected.size();
    for (std::size_t i = 0; same && i < expected.size(); ++i) {
      same = got.items[i].venue == std::to_string(expected[i].first - 1) &&
             std::abs(got.items[i].score - expected[i].second) <= 1e-12;
    }
    if (!same) ++out.mismatches;
    ++out.models;
  }
  return out;
}

}  // namespace checks
