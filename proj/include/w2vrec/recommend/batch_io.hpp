#pragma once

#include <w2vrec/error.hpp>
#include <w2vrec/recommend/list.hpp>

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace w2vrec::recommend {

inline constexpr const char* kNoPrediction = "no-prediction";

inline std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", score);
  return buf;
}

// user <TAB> method <TAB> venue:score ... or user <TAB> method <TAB> no-prediction
inline void write_recommendations(std::ostream& out, const std::vector<RecommendationList>& lists) {
  for (const auto& list : lists) {
    out << list.user << '\t' << to_string(list.method);
    if (!list.predicted()) {
      out << '\t' << kNoPrediction;
    } else {
      for (const auto& item : list.items) out << '\t' << item.venue << ':' << format_score(item.score);
    }
    out << '\n';
  }
}

inline std::vector<RecommendationList> read_recommendations(std::istream& in) {
  std::vector<RecommendationList> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() < 3) throw FormatError("recommendation line needs at least 3 fields: " + line);
    RecommendationList list;
    list.user = fields[0];
    list.method = parse_method(fields[1]);
    if (fields.size() == 3 && fields[2] == kNoPrediction) {
      list.no_prediction_reason = kNoPrediction;
    } else {
      for (std::size_t i = 2; i < fields.size(); ++i) {
        const auto colon = fields[i].rfind(':');
        if (colon == std::string::npos || colon == 0) {
          throw FormatError("expected venue:score, got " + fields[i]);
        }
        try {
          list.items.push_back({fields[i].substr(0, colon), std::stod(fields[i].substr(colon + 1))});
        } catch (const std::logic_error&) {
          throw FormatError("bad score in " + fields[i]);
        }
      }
    }
    out.push_back(std::move(list));
  }
  return out;
}

// One user id per line; blank lines and '#' comments ignored.
inline std::vector<std::string> read_user_list(std::istream& in) {
  std::vector<std::string> users;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') continue;
    users.push_back(line);
  }
  return users;
}

}  // namespace w2vrec::recommend
