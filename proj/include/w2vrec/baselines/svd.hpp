#pragma once

#include <w2vrec/baselines/factor_model.hpp>
#include <w2vrec/baselines/matrix.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/rng.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace w2vrec::baselines {

struct SvdOptions {
  std::size_t oversampling = 10;
  std::size_t power_iterations = 2;  // always performed
  // Further subspace iterations run until the leading singular values
  // change by less than this relative amount; 0 disables them.
  double tolerance = 1e-13;
  std::size_t max_power_iterations = 500;
  std::uint64_t seed = 7;
};

struct SvdResult {
  Eigen::MatrixXd u;  // m x achieved rank, orthonormal columns
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd v;  // n x achieved rank
  std::size_t requested_rank = 0;
  std::size_t power_iterations = 0;
  std::vector<std::string> warnings;

  std::size_t rank() const { return static_cast<std::size_t>(singular_values.size()); }
};

namespace detail {

inline Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

// SVD of B = Q^T A through a QR of A^T Q, so only an l x l dense SVD is
// needed even for very wide matrices.
template <typename MatrixType>
void project_and_decompose(const MatrixType& a, const Eigen::MatrixXd& q, Eigen::MatrixXd& u,
                           Eigen::VectorXd& s, Eigen::MatrixXd& v) {
  const Eigen::MatrixXd bt = a.transpose() * q;  // n x l
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(bt);
  const Eigen::MatrixXd q2 = qr.householderQ() * Eigen::MatrixXd::Identity(bt.rows(), bt.cols());
  const Eigen::MatrixXd r = qr.matrixQR().topRows(bt.cols()).template triangularView<Eigen::Upper>();
  // B = R^T Q2^T
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = q * svd.matrixU();
  s = svd.singularValues();
  v = q2 * svd.matrixV();
}

}  // namespace detail

// Rank-r truncated SVD by randomized subspace iteration. Works for dense
// and sparse Eigen matrices. When A has rank below r the achieved rank is
// returned together with a warning.
template <typename MatrixType>
SvdResult randomized_svd(const MatrixType& a, std::size_t r, const SvdOptions& opts = {}) {
  const auto m = static_cast<std::size_t>(a.rows());
  const auto n = static_cast<std::size_t>(a.cols());
  if (r < 1) throw ConfigError("SVD rank must be >= 1");
  if (r > std::min(m, n)) throw ConfigError("SVD rank exceeds min(rows, cols)");
  const auto l = static_cast<Eigen::Index>(std::min(r + opts.oversampling, std::min(m, n)));

  Rng rng(opts.seed);
  Eigen::MatrixXd omega(static_cast<Eigen::Index>(n), l);
  for (Eigen::Index j = 0; j < l; ++j)
    for (Eigen::Index i = 0; i < omega.rows(); ++i) omega(i, j) = rng.normal();

  Eigen::MatrixXd q = detail::orthonormal_basis(a * omega);
  auto iterate = [&] {
    const Eigen::MatrixXd z = detail::orthonormal_basis(a.transpose() * q);
    q = detail::orthonormal_basis(a * z);
  };

  SvdResult out;
  out.requested_rank = r;
  for (std::size_t i = 0; i < opts.power_iterations; ++i) iterate();
  out.power_iterations = opts.power_iterations;

  Eigen::MatrixXd u, v;
  Eigen::VectorXd s;
  detail::project_and_decompose(a, q, u, s, v);
  if (opts.tolerance > 0.0) {
    const auto head = static_cast<Eigen::Index>(r);
    while (out.power_iterations < opts.max_power_iterations) {
      const Eigen::VectorXd previous = s.head(head);
      iterate();
      ++out.power_iterations;
      detail::project_and_decompose(a, q, u, s, v);
      const double scale = std::max(previous(0), 1e-300);
      if ((s.head(head) - previous).cwiseAbs().maxCoeff() <= opts.tolerance * scale) break;
    }
    if (out.power_iterations >= opts.max_power_iterations) {
      out.warnings.push_back("subspace iteration hit max_power_iterations before converging");
    }
  }

  std::size_t achieved = 0;
  const double cutoff = s.size() > 0 ? s(0) * 1e-12 * static_cast<double>(std::max(m, n)) : 0.0;
  while (achieved < r && s(static_cast<Eigen::Index>(achieved)) > cutoff) ++achieved;
  if (achieved < r) {
    out.warnings.push_back("matrix rank " + std::to_string(achieved) + " is below requested rank " +
                           std::to_string(r));
  }
  const auto keep = static_cast<Eigen::Index>(achieved);
  out.u = u.leftCols(keep);
  out.singular_values = s.head(keep);
  out.v = v.leftCols(keep);
  return out;
}

// Latent factors U_r diag(sqrt(sigma)) and V_r diag(sqrt(sigma)).
inline FactorModel svd_factorize(const InteractionMatrix& m, std::size_t r, const SvdOptions& opts = {},
                                 std::vector<std::string>* warnings = nullptr) {
  const auto svd = randomized_svd(m.to_eigen(), r, opts);
  if (warnings != nullptr) *warnings = svd.warnings;
  const Eigen::VectorXd root = svd.singular_values.cwiseSqrt();
  FactorModel fm;
  fm.users = svd.u * root.asDiagonal();
  fm.venues = svd.v * root.asDiagonal();
  fm.user_ids = m.user_ids();
  fm.venue_ids = m.venue_ids();
  return fm;
}

}  // namespace w2vrec::baselines
