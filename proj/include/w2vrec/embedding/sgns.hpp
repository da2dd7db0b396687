#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace w2vrec::embedding {

inline constexpr double kDotClamp = 30.0;

template <typename Real>
double dot(std::span<const Real> a, std::span<const Real> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
  return s;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// One term of the negative-sampling objective for score x = h . out.
// Positive pairs contribute -log sigma(x), negatives -log sigma(-x).
// Returns the loss and stores dloss/dx in coef. x is clamped to +-30.
inline double pair_loss(double x, bool positive, double& coef) {
  x = std::clamp(x, -kDotClamp, kDotClamp);
  const double s = sigmoid(x);
  if (positive) {
    coef = s - 1.0;
    return std::log1p(std::exp(-x));
  }
  coef = s;
  return std::log1p(std::exp(x));
}

template <typename Real>
struct SgnsGradients {
  double loss = 0.0;
  std::vector<Real> center;
  std::vector<Real> context;
  std::vector<std::vector<Real>> negatives;
};

// loss = -log sigma(center.context) - sum_i log sigma(-center.negative_i)
// together with the gradient of loss with respect to every participating
// vector.
template <typename Real>
SgnsGradients<Real> negative_sampling_gradient(std::span<const Real> center,
                                               std::span<const Real> context,
                                               const std::vector<std::span<const Real>>& negatives) {
  const std::size_t f = center.size();
  SgnsGradients<Real> g;
  g.center.assign(f, Real(0));
  g.context.assign(f, Real(0));
  g.negatives.assign(negatives.size(), std::vector<Real>(f, Real(0)));

  auto term = [&](std::span<const Real> out, bool positive, std::vector<Real>& grad_out) {
    double coef = 0.0;
    g.loss += pair_loss(dot(center, out), positive, coef);
    for (std::size_t d = 0; d < f; ++d) {
      g.center[d] += static_cast<Real>(coef * out[d]);
      grad_out[d] = static_cast<Real>(coef * center[d]);
    }
  };
  term(context, true, g.context);
  for (std::size_t i = 0; i < negatives.size(); ++i) term(negatives[i], false, g.negatives[i]);
  return g;
}

// In-place descent step for one (h, out) term: out -= lr * dloss/dout and
// dloss/dh is accumulated into grad_h. Returns the term's loss.
template <typename Real>
double sgd_pair_step(std::span<const Real> h, std::span<Real> out, bool positive, double lr,
                     std::span<double> grad_h) {
  double coef = 0.0;
  const double loss = pair_loss(dot(h, std::span<const Real>(out)), positive, coef);
  const double step = lr * coef;
  for (std::size_t d = 0; d < h.size(); ++d) {
    grad_h[d] += coef * out[d];
    out[d] -= static_cast<Real>(step * h[d]);
  }
  return loss;
}

}  // namespace w2vrec::embedding
