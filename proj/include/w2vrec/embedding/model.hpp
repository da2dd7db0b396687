#pragma once

#include <w2vrec/corpus/vocabulary.hpp>
#include <w2vrec/embedding/config.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/rng.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace w2vrec::embedding {

using corpus::TokenIndex;
using corpus::Vocabulary;

// Input (center) and output (context) matrices, |vocab| x F, row-major.
// Similarity queries always use the input matrix.
template <typename Real = float>
class EmbeddingModel {
 public:
  using value_type = Real;

  EmbeddingModel() = default;

  EmbeddingModel(Vocabulary vocab, TrainingConfig config)
      : vocab_(std::move(vocab)),
        config_(config),
        input_(vocab_.size() * config.features, Real(0)),
        output_(vocab_.size() * config.features, Real(0)) {}

  const Vocabulary& vocab() const { return vocab_; }
  const TrainingConfig& config() const { return config_; }
  std::size_t features() const { return config_.features; }
  std::size_t rows() const { return vocab_.size(); }

  std::span<const Real> input_row(TokenIndex i) const {
    return {input_.data() + static_cast<std::size_t>(i) * features(), features()};
  }
  std::span<Real> input_row(TokenIndex i) {
    return {input_.data() + static_cast<std::size_t>(i) * features(), features()};
  }
  std::span<const Real> output_row(TokenIndex i) const {
    return {output_.data() + static_cast<std::size_t>(i) * features(), features()};
  }
  std::span<Real> output_row(TokenIndex i) {
    return {output_.data() + static_cast<std::size_t>(i) * features(), features()};
  }

  const std::vector<Real>& input_matrix() const { return input_; }
  const std::vector<Real>& output_matrix() const { return output_; }
  std::vector<Real>& input_matrix() { return input_; }
  std::vector<Real>& output_matrix() { return output_; }

  // Throws LookupError for tokens outside the vocabulary.
  std::span<const Real> get_vector(std::string_view token) const {
    return input_row(vocab_.index_of(token));
  }

  bool all_finite() const {
    for (auto x : input_) if (!std::isfinite(x)) return false;
    for (auto x : output_) if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  Vocabulary vocab_;
  TrainingConfig config_;
  std::vector<Real> input_;
  std::vector<Real> output_;
};

// Input rows uniform in [-0.5/F, 0.5/F) drawn row-major from Rng(seed);
// output rows zero.
template <typename Real = float>
EmbeddingModel<Real> init_model(const Vocabulary& vocab, const TrainingConfig& config) {
  if (config.features == 0) throw ConfigError("feature count F must be >= 1");
  if (vocab.empty()) throw EmptyVocabularyError("cannot initialise a model over an empty vocabulary");
  EmbeddingModel<Real> model(vocab, config);
  Rng rng(config.seed);
  const double scale = 1.0 / static_cast<double>(config.features);
  for (auto& x : model.input_matrix()) x = static_cast<Real>((rng.uniform() - 0.5) * scale);
  return model;
}

}  // namespace w2vrec::embedding
