#pragma once

#include <w2vrec/corpus/checkin.hpp>

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace w2vrec::corpus {

struct Dataset {
  std::vector<CheckinRecord> train;
  std::vector<CheckinRecord> test;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// train: timestamp < boundary, test: timestamp >= boundary. Input order is
// preserved on both sides.
inline Dataset split_train_test(const std::vector<CheckinRecord>& records, std::int64_t boundary) {
  Dataset ds;
  for (const auto& r : records) {
    (r.timestamp < boundary ? ds.train : ds.test).push_back(r);
  }
  return ds;
}

inline std::vector<std::string> split_warnings(const Dataset& ds) {
  std::vector<std::string> warnings;
  if (ds.train.empty()) warnings.emplace_back("training side of the split is empty");
  if (ds.test.empty()) warnings.emplace_back("test side of the split is empty");
  return warnings;
}

// Users that occur in test but never in train, sorted.
inline std::vector<std::string> cold_start_users(const Dataset& ds) {
  std::unordered_set<std::string> known;
  for (const auto& r : ds.train) known.insert(r.user);
  std::set<std::string> cold;
  for (const auto& r : ds.test) {
    if (!known.contains(r.user)) cold.insert(r.user);
  }
  return {cold.begin(), cold.end()};
}

// Longest sentence the training side can produce: one user token plus all
// of that user's check-ins.
inline std::size_t max_sentence_length(const std::vector<CheckinRecord>& train) {
  std::unordered_map<std::string, std::size_t> counts;
  std::size_t best = 0;
  for (const auto& r : train) best = std::max(best, ++counts[r.user]);
  return best == 0 ? 0 : best + 1;
}

// Text serialization: "#train <n>" header, n check-in lines, "#test <m>"
// header, m check-in lines.
inline void write_dataset(std::ostream& out, const Dataset& ds) {
  out << "#train " << ds.train.size() << '\n';
  write_checkins(out, ds.train);
  out << "#test " << ds.test.size() << '\n';
  write_checkins(out, ds.test);
}

inline Dataset read_dataset(std::istream& in) {
  Dataset ds;
  std::vector<CheckinRecord>* side = nullptr;
  std::string line;
  FieldLayout layout;
  while (std::getline(in, line)) {
    if (line.rfind("#train", 0) == 0) {
      side = &ds.train;
      continue;
    }
    if (line.rfind("#test", 0) == 0) {
      side = &ds.test;
      continue;
    }
    if (line.empty()) continue;
    if (side == nullptr) throw FormatError("dataset stream is missing its #train header");
    CheckinRecord record;
    if (!detail::parse_line(detail::trim_cr(line), layout, record)) {
      throw FormatError("malformed dataset line: " + line);
    }
    side->push_back(std::move(record));
  }
  return ds;
}

}  // namespace w2vrec::corpus
