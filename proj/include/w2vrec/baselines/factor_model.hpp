#pragma once

#include <w2vrec/binary_io.hpp>
#include <w2vrec/error.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace w2vrec::baselines {

// Latent user (U) and venue (V) factors; rows align with an
// InteractionMatrix's rows and columns.
struct FactorModel {
  Eigen::MatrixXd users;   // rows x r
  Eigen::MatrixXd venues;  // cols x r
  double lambda = 0.0;
  std::vector<std::string> user_ids;
  std::vector<std::string> venue_ids;

  Eigen::Index rank() const { return users.cols(); }

  bool all_finite() const { return users.allFinite() && venues.allFinite(); }
};

inline constexpr char kFactorMagic[5] = "W2VF";
inline constexpr std::uint32_t kFactorVersion = 1;

// Layout (little-endian): magic "W2VF" | u32 version | u64 rows | u64 cols |
// u32 r | f64 lambda (as u64 bits) | row ids | column ids | U | V, matrices
// row-major f32, ids as (u32 length, bytes).
inline void save_factor_model(std::ostream& out, const FactorModel& fm) {
  out.write(kFactorMagic, 4);
  binary::write_le<std::uint32_t>(out, kFactorVersion);
  binary::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(fm.users.rows()));
  binary::write_le<std::uint64_t>(out, static_cast<std::uint64_t>(fm.venues.rows()));
  binary::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(fm.rank()));
  binary::write_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(fm.lambda));
  for (const auto& id : fm.user_ids) binary::write_string(out, id);
  for (const auto& id : fm.venue_ids) binary::write_string(out, id);
  for (Eigen::Index i = 0; i < fm.users.rows(); ++i)
    for (Eigen::Index t = 0; t < fm.users.cols(); ++t) binary::write_f32(out, static_cast<float>(fm.users(i, t)));
  for (Eigen::Index j = 0; j < fm.venues.rows(); ++j)
    for (Eigen::Index t = 0; t < fm.venues.cols(); ++t) binary::write_f32(out, static_cast<float>(fm.venues(j, t)));
  if (!out) throw IoError("failed writing factor model");
}

inline FactorModel load_factor_model(std::istream& in) {
  binary::expect_magic(in, kFactorMagic);
  if (binary::read_le<std::uint32_t>(in) != kFactorVersion) throw FormatError("unsupported factor model version");
  const auto rows = binary::read_le<std::uint64_t>(in);
  const auto cols = binary::read_le<std::uint64_t>(in);
  const auto r = binary::read_le<std::uint32_t>(in);
  FactorModel fm;
  fm.lambda = std::bit_cast<double>(binary::read_le<std::uint64_t>(in));
  for (std::uint64_t i = 0; i < rows; ++i) fm.user_ids.push_back(binary::read_string(in));
  for (std::uint64_t j = 0; j < cols; ++j) fm.venue_ids.push_back(binary::read_string(in));
  fm.users.resize(static_cast<Eigen::Index>(rows), r);
  fm.venues.resize(static_cast<Eigen::Index>(cols), r);
  for (Eigen::Index i = 0; i < fm.users.rows(); ++i)
    for (Eigen::Index t = 0; t < r; ++t) fm.users(i, t) = binary::read_f32(in);
  for (Eigen::Index j = 0; j < fm.venues.rows(); ++j)
    for (Eigen::Index t = 0; t < r; ++t) fm.venues(j, t) = binary::read_f32(in);
  return fm;
}

inline void save_factor_model(const std::string& path, const FactorModel& fm) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write factor model: " + path);
  save_factor_model(out, fm);
}

inline FactorModel load_factor_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open factor model: " + path);
  return load_factor_model(in);
}

}  // namespace w2vrec::baselines
