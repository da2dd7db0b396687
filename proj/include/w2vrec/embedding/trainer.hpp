#pragma once

#include <w2vrec/corpus/sentences.hpp>
#include <w2vrec/embedding/model.hpp>
#include <w2vrec/embedding/sampler.hpp>
#include <w2vrec/embedding/sgns.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/rng.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

namespace w2vrec::embedding {

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double average_loss = 0.0;
  double learning_rate_end = 0.0;
  double seconds = 0.0;
  std::size_t predictions = 0;  // positive terms contributing to the loss
};

struct LossTrace {
  std::vector<EpochStats> epochs;
  std::size_t window = 0;  // radius actually used
  bool shrink_window = true;
  double seconds = 0.0;
};

inline void write_loss_csv(std::ostream& out, const LossTrace& trace) {
  out << "epoch,average_loss,learning_rate_end,seconds\n";
  for (const auto& e : trace.epochs) {
    out << e.epoch << ',' << e.average_loss << ',' << e.learning_rate_end << ',' << e.seconds
        << '\n';
  }
}

// Called for every (center position, context position) pair the trainer
// visits, with the sentence index. Only for instrumentation; must be thread
// safe when workers > 1.
using PairObserver = std::function<void(std::size_t sentence, std::size_t center, std::size_t context)>;

namespace detail {

template <typename Real>
class Worker {
 public:
  Worker(EmbeddingModel<Real>& model, const NegativeSampler& sampler, std::uint64_t seed)
      : model_(model),
        sampler_(sampler),
        rng_(seed),
        h_(model.features()),
        grad_h_(model.features()) {}

  struct Schedule {
    double initial;
    double min;
    double total_positions;  // positions per epoch * epochs
  };

  // Processes sentences[first, last) for one epoch.
  void run(const std::vector<corpus::Sentence>& sentences, std::size_t first, std::size_t last,
           std::size_t window, bool shrink, const Schedule& schedule,
           std::atomic<std::size_t>& progress, const PairObserver* observer) {
    const auto arch = model_.config().architecture;
    for (std::size_t s = first; s < last; ++s) {
      const auto& tokens = sentences[s].tokens;
      const std::size_t n = tokens.size();
      for (std::size_t pos = 0; pos < n; ++pos) {
        const double done = static_cast<double>(progress.fetch_add(1, std::memory_order_relaxed));
        lr_ = std::max(schedule.min, schedule.initial - (schedule.initial - schedule.min) *
                                                            (done / schedule.total_positions));
        const std::size_t radius =
            shrink ? static_cast<std::size_t>(rng_.between(1, static_cast<std::int64_t>(window)))
                   : window;
        const std::size_t lo = pos > radius ? pos - radius : 0;
        const std::size_t hi = std::min(n - 1, pos + radius);
        if (arch == Architecture::SkipGram) {
          for (std::size_t c = lo; c <= hi; ++c) {
            if (c == pos) continue;
            if (observer != nullptr) (*observer)(s, pos, c);
            skipgram_pair(tokens[pos], tokens[c]);
          }
        } else {
          if (observer != nullptr) {
            for (std::size_t c = lo; c <= hi; ++c) {
              if (c != pos) (*observer)(s, pos, c);
            }
          }
          cbow_position(tokens, pos, lo, hi);
        }
      }
    }
  }

  double loss = 0.0;
  std::size_t predictions = 0;
  double last_lr() const { return lr_; }

 private:
  // Center input vector predicts the context token.
  void skipgram_pair(TokenIndex center, TokenIndex context) {
    auto h = model_.input_row(center);
    std::fill(grad_h_.begin(), grad_h_.end(), 0.0);
    predict(std::span<const Real>(h.data(), h.size()), context);
    for (std::size_t d = 0; d < h.size(); ++d) h[d] -= static_cast<Real>(lr_ * grad_h_[d]);
  }

  // Mean of the context input vectors predicts the center token; the
  // gradient is applied unscaled to every context row.
  void cbow_position(const std::vector<TokenIndex>& tokens, std::size_t pos, std::size_t lo,
                     std::size_t hi) {
    const std::size_t f = model_.features();
    std::vector<double> acc(f, 0.0);
    std::size_t count = 0;
    for (std::size_t c = lo; c <= hi; ++c) {
      if (c == pos) continue;
      auto row = model_.input_row(tokens[c]);
      for (std::size_t d = 0; d < f; ++d) acc[d] += row[d];
      ++count;
    }
    if (count == 0) return;
    for (std::size_t d = 0; d < f; ++d) h_[d] = static_cast<Real>(acc[d] / static_cast<double>(count));
    std::fill(grad_h_.begin(), grad_h_.end(), 0.0);
    predict(std::span<const Real>(h_), tokens[pos]);
    for (std::size_t c = lo; c <= hi; ++c) {
      if (c == pos) continue;
      auto row = model_.input_row(tokens[c]);
      for (std::size_t d = 0; d < f; ++d) row[d] -= static_cast<Real>(lr_ * grad_h_[d]);
    }
  }

  void predict(std::span<const Real> h, TokenIndex target) {
    loss += sgd_pair_step(h, model_.output_row(target), true, lr_, std::span<double>(grad_h_));
    for (std::size_t k = 0; k < model_.config().negative; ++k) {
      const auto neg = sampler_.sample_excluding(rng_, target);
      loss += sgd_pair_step(h, model_.output_row(neg), false, lr_, std::span<double>(grad_h_));
    }
    ++predictions;
  }

  EmbeddingModel<Real>& model_;
  const NegativeSampler& sampler_;
  Rng rng_;
  std::vector<Real> h_;
  std::vector<double> grad_h_;
  double lr_ = 0.0;
};

}  // namespace detail

// Trains in place for config().epochs epochs with linearly decaying
// learning rate. workers == 1 is bit-reproducible; more workers update the
// shared matrices without locks.
template <typename Real>
LossTrace train(EmbeddingModel<Real>& model, const std::vector<corpus::Sentence>& sentences,
                const PairObserver* observer = nullptr) {
  const auto& config = model.config();
  config.validate();
  if (sentences.empty()) throw TrainingError("cannot train on an empty sentence list");

  std::size_t positions = 0;
  std::size_t max_len = 0;
  for (const auto& s : sentences) {
    if (s.tokens.empty()) throw TrainingError("empty sentence");
    for (auto t : s.tokens) {
      if (t >= model.rows()) throw TrainingError("sentence token outside the model vocabulary");
    }
    positions += s.tokens.size();
    max_len = std::max(max_len, s.tokens.size());
  }

  const NegativeSampler sampler(model.vocab(), config.sampling_power);
  LossTrace trace;
  trace.window = config.effective_window(max_len);
  trace.shrink_window = config.effective_shrink();

  const std::size_t workers = std::min(config.workers, sentences.size());
  std::vector<detail::Worker<Real>> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(model, sampler, Rng::derive(config.seed, w + 1));
  }
  const typename detail::Worker<Real>::Schedule schedule{
      config.initial_learning_rate, config.min_learning_rate,
      static_cast<double>(positions) * static_cast<double>(config.epochs)};
  std::atomic<std::size_t> progress{0};

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto epoch_start = std::chrono::steady_clock::now();
    for (auto& w : pool) {
      w.loss = 0.0;
      w.predictions = 0;
    }
    auto chunk = [&](std::size_t w) {
      const std::size_t first = sentences.size() * w / workers;
      const std::size_t last = sentences.size() * (w + 1) / workers;
      pool[w].run(sentences, first, last, trace.window, trace.shrink_window, schedule, progress,
                  observer);
    };
    if (workers == 1) {
      chunk(0);
    } else {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(chunk, w);
    }

    EpochStats stats;
    stats.epoch = epoch;
    double loss = 0.0;
    for (const auto& w : pool) {
      loss += w.loss;
      stats.predictions += w.predictions;
    }
    stats.learning_rate_end = pool.front().last_lr();
    for (const auto& w : pool) stats.learning_rate_end = std::min(stats.learning_rate_end, w.last_lr());
    stats.average_loss = stats.predictions > 0 ? loss / static_cast<double>(stats.predictions) : 0.0;
    stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start).count();
    trace.epochs.push_back(stats);
  }
  trace.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

}  // namespace w2vrec::embedding
