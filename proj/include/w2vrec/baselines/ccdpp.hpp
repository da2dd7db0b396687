#pragma once

#include <w2vrec/baselines/factor_model.hpp>
#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/rng.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

namespace w2vrec::baselines {

struct CcdOptions {
  std::size_t rank = 100;  // r
  double lambda = 0.1;
  std::size_t iterations = 15;  // outer sweeps over all latent indices
  std::size_t inner_iterations = 1;
  std::uint64_t seed = 11;
};

struct CcdResult {
  FactorModel model;
  double initial_objective = 0.0;
  std::vector<double> objective;  // after each outer iteration
  // First outer iteration whose sweep did not lower the objective. That
  // sweep is undone and the remaining trace entries repeat the last value.
  std::optional<std::size_t> stagnated_at;
};

// sum over observed (A_ij - u_i . v_j)^2 + lambda (|U|^2 + |V|^2)
inline double ccd_objective(const InteractionMatrix& a, const Eigen::MatrixXd& u, const Eigen::MatrixXd& v,
                            double lambda) {
  double loss = 0.0;
  for (std::uint32_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, value] : a.row(i)) {
      const double e = value - u.row(i).dot(v.row(j));
      loss += e * e;
    }
  }
  return loss + lambda * (u.squaredNorm() + v.squaredNorm());
}

// CCD++: for each latent index t the rank-one term u_t v_t^T is added back
// to the residual, u_t and v_t are refit coordinate-wise in closed form,
// and the term is subtracted again. U starts at zero, V uniform in
// [0, 1/sqrt(r)).
inline CcdResult ccdpp_factorize(const InteractionMatrix& a, const CcdOptions& opts) {
  if (opts.rank < 1) throw ConfigError("CCD++ rank must be >= 1");
  if (!(opts.lambda > 0.0)) throw ConfigError("CCD++ lambda must be > 0");
  if (opts.iterations < 1 || opts.inner_iterations < 1) throw ConfigError("CCD++ iterations must be >= 1");

  const auto rows = static_cast<Eigen::Index>(a.rows());
  const auto cols = static_cast<Eigen::Index>(a.cols());
  const auto r = static_cast<Eigen::Index>(opts.rank);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(rows, r);
  Eigen::MatrixXd v(cols, r);
  Rng rng(opts.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(opts.rank));
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index t = 0; t < r; ++t) v(j, t) = rng.uniform() * scale;

  // Residuals held twice, once per row list and once per column list, with
  // a map from column-list slots to row-list slots.
  std::vector<std::size_t> row_start(a.rows() + 1, 0);
  for (std::uint32_t i = 0; i < a.rows(); ++i) row_start[i + 1] = row_start[i] + a.row(i).size();
  std::vector<double> residual(a.nonzeros());
  std::vector<std::uint32_t> residual_col(a.nonzeros());
  for (std::uint32_t i = 0; i < a.rows(); ++i) {
    std::size_t p = row_start[i];
    for (const auto& [j, value] : a.row(i)) {
      residual[p] = value;  // U = 0
      residual_col[p] = j;
      ++p;
    }
  }
  std::vector<std::vector<std::size_t>> col_slots(a.cols());
  {
    for (std::uint32_t i = 0; i < a.rows(); ++i)
      for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) col_slots[residual_col[p]].push_back(p);
  }
  std::vector<std::uint32_t> slot_row(a.nonzeros());
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) slot_row[p] = i;

  auto add_rank_one = [&](Eigen::Index t, double sign) {
    for (std::uint32_t i = 0; i < a.rows(); ++i) {
      const double ui = u(i, t);
      if (ui == 0.0) continue;
      for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) {
        residual[p] += sign * ui * v(residual_col[p], t);
      }
    }
  };

  CcdResult out;
  out.initial_objective = ccd_objective(a, u, v, opts.lambda);
  double current = out.initial_objective;
  Eigen::MatrixXd kept_u, kept_v;
  std::vector<double> kept_residual;
  for (std::size_t outer = 0; outer < opts.iterations; ++outer) {
    if (out.stagnated_at) {
      out.objective.push_back(current);
      continue;
    }
    kept_u = u;
    kept_v = v;
    kept_residual = residual;
    for (Eigen::Index t = 0; t < r; ++t) {
      add_rank_one(t, +1.0);
      for (std::size_t inner = 0; inner < opts.inner_iterations; ++inner) {
        for (std::uint32_t i = 0; i < a.rows(); ++i) {
          double num = 0.0;
          double den = opts.lambda;
          for (std::size_t p = row_start[i]; p < row_start[i + 1]; ++p) {
            const double vj = v(residual_col[p], t);
            num += residual[p] * vj;
            den += vj * vj;
          }
          u(i, t) = num / den;
        }
        for (std::uint32_t j = 0; j < a.cols(); ++j) {
          double num = 0.0;
          double den = opts.lambda;
          for (auto p : col_slots[j]) {
            const double ui = u(slot_row[p], t);
            num += residual[p] * ui;
            den += ui * ui;
          }
          v(j, t) = num / den;
        }
      }
      add_rank_one(t, -1.0);
    }
    double loss = 0.0;
    for (double e : residual) loss += e * e;
    const double next = loss + opts.lambda * (u.squaredNorm() + v.squaredNorm());
    if (next < current) {
      current = next;
    } else {
      u = kept_u;
      v = kept_v;
      residual = kept_residual;
      out.stagnated_at = outer;
    }
    out.objective.push_back(current);
  }

  out.model.users = std::move(u);
  out.model.venues = std::move(v);
  out.model.lambda = opts.lambda;
  out.model.user_ids = a.user_ids();
  out.model.venue_ids = a.venue_ids();
  return out;
}

}  // namespace w2vrec::baselines
