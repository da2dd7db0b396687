#pragma once

#include <w2vrec/corpus/vocabulary.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace w2vrec::embedding {

// Noise distribution over all tokens, proportional to frequency^power.
class NegativeSampler {
 public:
  NegativeSampler(const corpus::Vocabulary& vocab, double power = 0.75) {
    if (vocab.size() < 2) {
      throw TrainingError("negative sampling needs at least two vocabulary tokens");
    }
    probability_.resize(vocab.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      probability_[i] = std::pow(static_cast<double>(vocab.frequencies()[i]), power);
      total += probability_[i];
    }
    cumulative_.resize(vocab.size());
    double running = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      probability_[i] /= total;
      running += probability_[i];
      cumulative_[i] = running;
    }
    cumulative_.back() = 1.0;
  }

  std::size_t size() const { return probability_.size(); }
  double probability(corpus::TokenIndex i) const { return probability_.at(i); }
  const std::vector<double>& cumulative() const { return cumulative_; }

  corpus::TokenIndex sample(Rng& rng) const {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<corpus::TokenIndex>(it - cumulative_.begin());
  }

  // Never returns `positive`; redraws on collision.
  corpus::TokenIndex sample_excluding(Rng& rng, corpus::TokenIndex positive) const {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const auto t = sample(rng);
      if (t != positive) return t;
    }
    // The positive token holds nearly all the mass; fall back to a uniform
    // pick among the others.
    auto t = static_cast<corpus::TokenIndex>(rng.below(size() - 1));
    return t >= positive ? t + 1 : t;
  }

 private:
  std::vector<double> probability_;
  std::vector<double> cumulative_;
};

}  // namespace w2vrec::embedding
