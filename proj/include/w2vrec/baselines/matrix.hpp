#pragma once

#include <w2vrec/corpus/checkin.hpp>
#include <w2vrec/error.hpp>
#include <w2vrec/recommend/vote.hpp>

#include <Eigen/SparseCore>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace w2vrec::baselines {

using recommend::HistoryEntry;

// Sparse user x venue matrix of train visit counts (or 1.0 in binary mode).
// Rows and columns follow first appearance in train. Only positive entries
// are stored.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  static InteractionMatrix from_records(const std::vector<corpus::CheckinRecord>& train,
                                        bool binary = false) {
    InteractionMatrix m;
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> cells;
    for (const auto& r : train) {
      const auto row = m.intern(m.user_index_, m.users_, r.user);
      const auto col = m.intern(m.venue_index_, m.venues_, r.venue);
      cells[{row, col}] += 1.0;
    }
    m.by_row_.resize(m.users_.size());
    m.by_col_.resize(m.venues_.size());
    for (const auto& [rc, count] : cells) {
      const double v = binary ? 1.0 : count;
      m.by_row_[rc.first].emplace_back(rc.second, v);
      m.by_col_[rc.second].emplace_back(rc.first, v);
      ++m.nnz_;
    }
    return m;
  }

  // Explicit (row, col, value) entries over the given ids. Values must be
  // positive; duplicate cells are summed.
  static InteractionMatrix from_entries(std::vector<std::string> users, std::vector<std::string> venues,
                                        const std::vector<Eigen::Triplet<double>>& entries) {
    InteractionMatrix m;
    for (const auto& u : users) {
      if (!m.user_index_.emplace(u, static_cast<std::uint32_t>(m.users_.size())).second) {
        throw ConfigError("duplicate user id " + u);
      }
      m.users_.push_back(u);
    }
    for (const auto& v : venues) {
      if (!m.venue_index_.emplace(v, static_cast<std::uint32_t>(m.venues_.size())).second) {
        throw ConfigError("duplicate venue id " + v);
      }
      m.venues_.push_back(v);
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> cells;
    for (const auto& e : entries) {
      if (e.row() < 0 || e.col() < 0 || static_cast<std::size_t>(e.row()) >= m.users_.size() ||
          static_cast<std::size_t>(e.col()) >= m.venues_.size()) {
        throw ConfigError("matrix entry outside the given ids");
      }
      if (!(e.value() > 0.0)) throw ConfigError("matrix entries must be positive");
      cells[{static_cast<std::uint32_t>(e.row()), static_cast<std::uint32_t>(e.col())}] += e.value();
    }
    m.by_row_.resize(m.users_.size());
    m.by_col_.resize(m.venues_.size());
    for (const auto& [rc, v] : cells) {
      m.by_row_[rc.first].emplace_back(rc.second, v);
      m.by_col_[rc.second].emplace_back(rc.first, v);
      ++m.nnz_;
    }
    return m;
  }

  std::size_t rows() const { return users_.size(); }
  std::size_t cols() const { return venues_.size(); }
  std::size_t nonzeros() const { return nnz_; }

  // (column, value), ascending column.
  std::span<const HistoryEntry> row(std::uint32_t r) const { return by_row_.at(r); }
  // (row, value), ascending row.
  std::span<const HistoryEntry> col(std::uint32_t c) const { return by_col_.at(c); }

  const std::string& user_id(std::uint32_t r) const { return users_.at(r); }
  const std::string& venue_id(std::uint32_t c) const { return venues_.at(c); }
  const std::vector<std::string>& user_ids() const { return users_; }
  const std::vector<std::string>& venue_ids() const { return venues_; }

  std::optional<std::uint32_t> find_user(const std::string& user) const {
    auto it = user_index_.find(user);
    if (it == user_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::uint32_t> find_venue(const std::string& venue) const {
    auto it = venue_index_.find(venue);
    if (it == venue_index_.end()) return std::nullopt;
    return it->second;
  }

  double row_norm(std::uint32_t r) const {
    double s = 0.0;
    for (const auto& [_, v] : row(r)) s += v * v;
    return std::sqrt(s);
  }

  Eigen::SparseMatrix<double> to_eigen() const {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(nnz_);
    for (std::uint32_t r = 0; r < rows(); ++r) {
      for (const auto& [c, v] : by_row_[r]) triplets.emplace_back(r, c, v);
    }
    Eigen::SparseMatrix<double> out(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
  }

 private:
  static std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& index,
                              std::vector<std::string>& names, const std::string& id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(id);
    return it->second;
  }

  std::vector<std::string> users_;
  std::vector<std::string> venues_;
  std::unordered_map<std::string, std::uint32_t> user_index_;
  std::unordered_map<std::string, std::uint32_t> venue_index_;
  std::vector<std::vector<HistoryEntry>> by_row_;
  std::vector<std::vector<HistoryEntry>> by_col_;
  std::size_t nnz_ = 0;
};

}  // namespace w2vrec::baselines
