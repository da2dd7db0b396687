#pragma once

#include <w2vrec/error.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace w2vrec::embedding {

enum class Architecture : std::uint8_t { SkipGram = 0, Cbow = 1 };

inline std::string_view to_string(Architecture a) {
  return a == Architecture::SkipGram ? "skipgram" : "cbow";
}

inline Architecture parse_architecture(std::string_view s) {
  if (s == "skipgram" || s == "skip-gram" || s == "sg") return Architecture::SkipGram;
  if (s == "cbow") return Architecture::Cbow;
  throw ConfigError("unknown architecture: " + std::string(s));
}

struct TrainingConfig {
  Architecture architecture = Architecture::SkipGram;
  std::size_t features = 100;  // F
  std::size_t window = 20;     // C, maximum window radius
  // When set, the window is the longest sentence of the corpus and is not
  // shrunk per position, so CBOW averages over whole sentences.
  bool window_max = false;
  bool shrink_window = true;  // radius drawn uniformly from [1, C] per position
  std::size_t epochs = 25;    // E
  std::size_t negative = 5;
  double sampling_power = 0.75;
  double initial_learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  void validate() const {
    if (features < 1) throw ConfigError("feature count F must be >= 1");
    if (!window_max && window < 1) throw ConfigError("context count C must be >= 1");
    if (epochs < 1) throw ConfigError("epoch count E must be >= 1");
    if (negative < 1) throw ConfigError("negative sample count must be >= 1");
    if (!(min_learning_rate > 0.0) || !(initial_learning_rate > min_learning_rate)) {
      throw ConfigError("learning rates must satisfy initial > min > 0");
    }
    if (workers < 1) throw ConfigError("worker count must be >= 1");
  }

  // Window radius and shrink flag actually used for a corpus whose longest
  // sentence has max_sentence_length tokens.
  std::size_t effective_window(std::size_t max_sentence_length) const {
    if (window_max) return max_sentence_length > 1 ? max_sentence_length - 1 : 1;
    return window;
  }
  bool effective_shrink() const { return window_max ? false : shrink_window; }
};

}  // namespace w2vrec::embedding
